#include "fockbundle/clifford.hpp"

#include <stdexcept>

namespace fockbundle {

CliffordWord CliffordWord::operator*(const CliffordWord& rhs) const {
    std::vector<CliffordTerm> out;
    out.reserve(terms_.size() * rhs.terms_.size());
    for (const CliffordTerm& a : terms_) {
        for (const CliffordTerm& b : rhs.terms_) {
            CliffordTerm t{a.scalar * b.scalar, a.letters};
            t.letters.insert(t.letters.end(), b.letters.begin(), b.letters.end());
            out.push_back(std::move(t));
        }
    }
    return CliffordWord(std::move(out));
}

CliffordWord CliffordWord::operator+(const CliffordWord& rhs) const {
    std::vector<CliffordTerm> out = terms_;
    out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
    return CliffordWord(std::move(out));
}

CliffordWord CliffordWord::operator*(Complex scale) const {
    std::vector<CliffordTerm> out = terms_;
    for (CliffordTerm& t : out)
        t.scalar *= scale;
    return CliffordWord(std::move(out));
}

CliffordWord generator(const ModeVector& v) { return CliffordWord({CliffordTerm{Complex(1, 0), {v}}}); }

CliffordWord star(const CliffordWord& w) {
    std::vector<CliffordTerm> out;
    out.reserve(w.terms().size());
    for (const CliffordTerm& t : w.terms()) {
        CliffordTerm s{std::conj(t.scalar), {}};
        s.letters.reserve(t.letters.size());
        for (auto it = t.letters.rbegin(); it != t.letters.rend(); ++it)
            s.letters.push_back(apply_alpha(*it));
        out.push_back(std::move(s));
    }
    return CliffordWord(std::move(out));
}

CliffordWord bogoliubov(const OrthogonalMap& g, const CliffordWord& w) {
    std::vector<CliffordTerm> out;
    out.reserve(w.terms().size());
    for (const CliffordTerm& t : w.terms()) {
        CliffordTerm s{t.scalar, {}};
        s.letters.reserve(t.letters.size());
        for (const ModeVector& v : t.letters) {
            if (v.space() != g.space())
                throw std::invalid_argument("bogoliubov: letter lives in a different space");
            s.letters.emplace_back(v.space(), (g.matrix() * v.coeffs()).eval());
        }
        out.push_back(std::move(s));
    }
    return CliffordWord(std::move(out));
}

RestrictedDiagnostics restricted_diagnostics(const Mat& g, const Lagrangian& l) {
    RestrictedDiagnostics out{};
    const int dim = l.space().dim();
    if (g.rows() != dim || g.cols() != dim)
        throw std::invalid_argument("restricted_diagnostics: shape mismatch");
    Mat p = l.projector();
    Mat pperp = Mat::Identity(dim, dim) - p;
    out.offdiag_hs = (p * g * pperp).norm();
    Mat j = l.complex_structure();
    out.j_commutator_hs = (g * j - j * g).norm();
    out.j_norm = operator_norm(g) + out.offdiag_hs;
    out.alpha_commutator = (alpha_conjugate(l.space(), g) - g).norm();
    return out;
}

RestrictedSequenceReport restricted_diagnostics_sequence(const MapRule& g, const LagrangianRule& l,
                                                         Parity parity, int d,
                                                         const std::vector<int>& cutoffs) {
    RestrictedSequenceReport rep;
    rep.cutoffs = cutoffs;
    std::vector<double> off_sq;
    for (int N : cutoffs) {
        ModeSpace space(parity, d, N);
        RestrictedDiagnostics diag = restricted_diagnostics(g(space), l(space));
        rep.offdiag_hs.push_back(diag.offdiag_hs);
        rep.j_commutator_hs.push_back(diag.j_commutator_hs);
        off_sq.push_back(diag.offdiag_hs * diag.offdiag_hs);
    }
    rep.verdict = growth_verdict(off_sq);
    return rep;
}

} // namespace fockbundle
