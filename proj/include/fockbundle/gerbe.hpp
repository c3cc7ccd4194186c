#pragma once

#include "fockbundle/implementer.hpp"

#include <array>
#include <map>
#include <optional>

namespace fockbundle {

// Finite model of the simplicial data of a cover: lists of ordered overlaps.
struct Nerve {
    int charts = 0;
    std::vector<std::array<int, 2>> doubles;
    std::vector<std::array<int, 3>> triples;
    std::vector<std::array<int, 4>> quads;
};

// all ascending tuples up to quadruples
Nerve full_nerve(int charts, bool with_quads = true);

// faces of every triple among the doubles, faces of quads among triples
void validate_nerve(const Nerve& nerve);

double mod_2pi_distance(double angle);

// Angle-valued Cech cochain; values keyed by ascending index tuples, one
// value = e^{i theta}. Angles are kept in R with explicit mod-2pi bookkeeping.
class CircleCochain {
  public:
    CircleCochain(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    double at(const std::vector<int>& key) const;
    void set(std::vector<int> key, double angle);
    const std::map<std::vector<int>, double>& values() const { return values_; }

  private:
    int degree_;
    std::map<std::vector<int>, double> values_;
};

// Cech coboundary; degree 1 -> 2 or 2 -> 3, evaluated on the listed overlaps
CircleCochain cech_delta(const Nerve& nerve, const CircleCochain& c);

// max distance of delta(c) to the 2 pi lattice over the relevant overlaps
double delta_residual(const Nerve& nerve, const CircleCochain& c);

// Transition data g_ij of a principal bundle over the nerve; stored on
// ascending pairs, extended by g_ii = 1 and g_ji = g_ij^{-1}.
class GroupCocycle {
  public:
    GroupCocycle(const ModeSpace& space, Nerve nerve, std::map<std::pair<int, int>, Mat> transitions,
                 double tol = 1e-8);

    const ModeSpace& space() const { return space_; }
    const Nerve& nerve() const { return nerve_; }
    Mat at(int i, int j) const;
    double cocycle_residual() const { return cocycle_residual_; }

  private:
    ModeSpace space_;
    Nerve nerve_;
    std::map<std::pair<int, int>, Mat> transitions_;
    double cocycle_residual_;
};

// strict cocycle g_ij = h_i^{-1} h_j from per-chart maps
GroupCocycle coboundary_cocycle(const ModeSpace& space, Nerve nerve, const std::vector<Mat>& chart_maps);

// Lifting data: implementers over each double overlap and the U(1)-valued
// 2-cocycle they generate on triples.
struct LiftingGerbeData {
    GroupCocycle transitions;
    FockSpace fock;
    std::map<std::pair<int, int>, Mat> lifts;
    CircleCochain two_cocycle;
    double cocycle_fit;     // max ||U_ij U_jk - e^{ic} U_ik||
    double delta_residual;  // of the 2-cocycle, mod 2pi, on quads
    double max_implementer_residual;

    Mat lift_at(int i, int j) const;
};

LiftingGerbeData lifting_cocycle(const GroupCocycle& gc, const FockSpace& fock);

struct TrivializeResult {
    bool trivializable = false;
    CircleCochain b{1};
    std::vector<double> residuals;    // least-squares residual per triple
    double max_lattice_distance = 0;  // distance of residuals to the 2pi lattice
};

// least-squares solve of delta(b) = -c with integer 2pi corrections;
// requires delta(c) = 0 mod 2pi on the listed quads
TrivializeResult trivialize(const Nerve& nerve, const CircleCochain& c, double tol = 1e-6);

// Per-chart Fock fibre with twisted transition implementers.
struct TwistedFockBundleData {
    GroupCocycle transitions;
    FockSpace fock;
    std::map<std::pair<int, int>, Mat> fock_transitions;
    CircleCochain two_cocycle;
    double intertwining_residual; // max verify_implements over overlaps
};

TwistedFockBundleData twisted_fock_bundle(const LiftingGerbeData& data);

struct UntwistResult {
    std::map<std::pair<int, int>, Mat> cocycle; // e^{i b_ij} U_ij
    double cocycle_residual;                    // strict cocycle defect on triples
    double implements_residual;                 // max verify_implements after the phase change
};

UntwistResult untwist(const TwistedFockBundleData& data, const CircleCochain& b, double tol = 1e-6);

// pullback of lifting data along a refinement; chart_map sends charts of the
// destination nerve to charts of the source, overlaps to overlaps; the
// optional hom transports the whole package along an orthogonal nu
LiftingGerbeData refine(const LiftingGerbeData& src, const Nerve& dst, const std::vector<int>& chart_map,
                        const std::optional<SpaceMap>& hom = std::nullopt);

enum class FibreRep { Mode, Clifford, Fock };

struct AssociatedCocycle {
    FibreRep rep;
    std::map<std::pair<int, int>, Mat> matrices;
    double cocycle_residual;                // strict, for mode and clifford
    std::vector<double> fock_phase_defects; // |discrepancy - c_ijk| per triple
};

AssociatedCocycle associated_cocycle(const GroupCocycle& gc, FibreRep rep,
                                     const LiftingGerbeData* lifts = nullptr);

} // namespace fockbundle
