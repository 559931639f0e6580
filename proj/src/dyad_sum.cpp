#include "ecsbell/dyad_sum.hpp"

namespace ecsbell {

namespace {

bool same_dyads(const DyadTerm& a, const DyadTerm& b, double tol) {
  return a.mode1.near(b.mode1, tol) && a.mode2.near(b.mode2, tol);
}

// Appends `term` to `out`, summing its weight into an existing term with
// coincident dyads if there is one.
void merge_into(std::vector<DyadTerm>& out, const DyadTerm& term) {
  for (auto& existing : out) {
    if (same_dyads(existing, term, kMergeTolerance)) {
      existing.weight += term.weight;
      return;
    }
  }
  out.push_back(term);
}

}  // namespace

TwoModeDyadSum TwoModeDyadSum::from_terms(std::span<const DyadTerm> terms) {
  std::vector<DyadTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) merge_into(merged, t);

  // (X + X^dagger)/2, term by term.
  std::vector<DyadTerm> sym;
  sym.reserve(2 * merged.size());
  for (const auto& t : merged) {
    merge_into(sym, {0.5 * t.weight, t.mode1, t.mode2});
  }
  for (const auto& t : merged) {
    DyadTerm adj = t.adjoint();
    adj.weight *= 0.5;
    merge_into(sym, adj);
  }

  TwoModeDyadSum out;
  for (const auto& t : sym) {
    if (t.weight != Complex{0.0, 0.0}) out.terms_.push_back(t);
  }
  return out;
}

Complex TwoModeDyadSum::trace() const {
  Complex total{0.0, 0.0};
  for (const auto& t : terms_) total += t.weight * t.mode1.trace() * t.mode2.trace();
  return total;
}

bool TwoModeDyadSum::is_hermitian_paired(double amp_tol) const {
  for (const auto& t : terms_) {
    const DyadTerm adj = t.adjoint();
    bool found = false;
    for (const auto& u : terms_) {
      if (same_dyads(u, adj, amp_tol) && u.weight == adj.weight) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

TwoModeDyadSum two_mode_vacuum() {
  const DyadTerm vac{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  return TwoModeDyadSum::from_terms(std::span(&vac, 1));
}

}  // namespace ecsbell
