#pragma once

#include "fockbundle/lagrangian.hpp"

namespace fockbundle {

// Formal *-algebra word: sum of scalar-weighted products of generators f(v).
// No symbolic normalization happens here; algebraic identities are checked
// through the Fock representation.
struct CliffordTerm {
    Complex scalar;
    std::vector<ModeVector> letters; // empty product = unit
};

class CliffordWord {
  public:
    CliffordWord() = default;
    explicit CliffordWord(std::vector<CliffordTerm> terms) : terms_(std::move(terms)) {}

    static CliffordWord unit() { return CliffordWord({CliffordTerm{Complex(1, 0), {}}}); }

    const std::vector<CliffordTerm>& terms() const { return terms_; }

    CliffordWord operator*(const CliffordWord& rhs) const;
    CliffordWord operator+(const CliffordWord& rhs) const;
    CliffordWord operator*(Complex scale) const;

  private:
    std::vector<CliffordTerm> terms_;
};

CliffordWord generator(const ModeVector& v);

// reverses products, applies alpha to letters, conjugates scalars
CliffordWord star(const CliffordWord& w);

// Bogoliubov automorphism: replaces each letter f(v) by f(g v)
CliffordWord bogoliubov(const OrthogonalMap& g, const CliffordWord& w);

struct RestrictedDiagnostics {
    double offdiag_hs;          // ||P_L g P_L^perp||_2
    double j_commutator_hs;     // ||[g, J_L]||_2
    double j_norm;              // ||g|| + offdiag_hs
    double alpha_commutator;    // ||g - alpha g alpha||
};

RestrictedDiagnostics restricted_diagnostics(const Mat& g, const Lagrangian& l);

struct RestrictedSequenceReport {
    std::vector<int> cutoffs;
    std::vector<double> offdiag_hs;
    std::vector<double> j_commutator_hs;
    std::string verdict;
};

using MapRule = std::function<Mat(const ModeSpace&)>;

// per-cutoff restricted diagnostics for a map given by a cutoff-independent rule
RestrictedSequenceReport restricted_diagnostics_sequence(const MapRule& g, const LagrangianRule& l,
                                                         Parity parity, int d,
                                                         const std::vector<int>& cutoffs);

} // namespace fockbundle
