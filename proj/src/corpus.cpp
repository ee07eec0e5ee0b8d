#include "lazycost/corpus.hpp"

#include <stdexcept>

namespace lazycost {

namespace {

// Programs take thunked list parameters so that an entirely unused argument
// can carry the Bot demand, matching the lazy calling convention.
const std::vector<CorpusEntry> kCorpus = {
    {"identity_fold",
     "(params (xs (T (list bool))))\n"
     "(body (foldr (fun x y (cons x y)) nil (force xs)))\n"},

    {"append",
     "(params (xs (T (list bool))) (ys (T (list bool))))\n"
     "(body (foldr (fun x y (cons x y)) (force ys) (force xs)))\n"},

    // Re-thunks every element behind a tick: each demanded element costs 1.
    {"map_tick",
     "(params (xs (T (list bool))))\n"
     "(body (foldr (fun x y (cons (lazy (tick (force x))) y)) nil (force xs)))\n"},

    // Keeps the elements that are true; forces one element per spine cell.
    {"keep_true",
     "(params (xs (T (list bool))))\n"
     "(body (foldr (fun x y (tick (if (force x) (cons x y) (force y)))) nil\n"
     "             (force xs)))\n"},

    // First two cells of the list, built from a triple of bounded prefixes
    // (take is not a fold on its own, but any fixed-width prefix is).
    {"take2",
     "(params (xs (T (list bool))))\n"
     "(body (force (snd (snd (foldr\n"
     "  (fun x t (pair (lazy nil)\n"
     "                 (pair (lazy (cons x (fst (force t))))\n"
     "                       (lazy (cons x (fst (snd (force t))))))))\n"
     "  (pair (lazy nil) (pair (lazy nil) (lazy nil)))\n"
     "  (force xs))))))\n"},

    // Ordered insert of a boolean (false <= true) via a paramorphism: the
    // fold carries (inserted suffix, original suffix).
    {"insert_bool",
     "(params (x bool) (xs (T (list bool))))\n"
     "(body (force (fst (foldr\n"
     "  (fun y p (tick (pair\n"
     "     (lazy (if (if (force y) x true)\n"
     "               (cons y (fst (force p)))\n"
     "               (cons (lazy x) (lazy (cons y (snd (force p)))))))\n"
     "     (lazy (cons y (snd (force p)))))))\n"
     "  (pair (lazy (cons (lazy x) (lazy nil))) (lazy nil))\n"
     "  (force xs)))))\n"},

    // Insertion sort over booleans: an outer fold inserting each element
    // into the sorted suffix.
    {"insertion_sort_bool",
     "(params (xs (T (list bool))))\n"
     "(body (foldr\n"
     "  (fun h acc (force (fst (foldr\n"
     "    (fun y p (tick (pair\n"
     "       (lazy (if (if (force y) (force h) true)\n"
     "                 (cons y (fst (force p)))\n"
     "                 (cons h (lazy (cons y (snd (force p)))))))\n"
     "       (lazy (cons y (snd (force p)))))))\n"
     "    (pair (lazy (cons h (lazy nil))) (lazy nil))\n"
     "    (force acc)))))\n"
     "  nil (force xs)))\n"},
};

}  // namespace

const std::vector<CorpusEntry>& corpus_sources() { return kCorpus; }

Program corpus_program(const std::string& name) {
  for (const auto& e : kCorpus) {
    if (e.name == name) {
      Program p = parse_program(e.source);
      p.name = e.name;
      return p;
    }
  }
  throw std::invalid_argument("unknown corpus program: " + name);
}

std::vector<Program> corpus_programs() {
  std::vector<Program> out;
  out.reserve(kCorpus.size());
  for (const auto& e : kCorpus) {
    Program p = parse_program(e.source);
    p.name = e.name;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lazycost
