#ifndef BOGOLAT_INVARIANTS_HPP_
#define BOGOLAT_INVARIANTS_HPP_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bogolat/band_matrix.hpp"
#include "bogolat/flow.hpp"
#include "bogolat/lattice.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

/// C, D: finite product lattice (L1-type table, R = N + 2 coefficients).
/// CTilde, DTilde: finite sum lattice (L2-type table, R = N + p + 1).
/// In terms of the structured Hankel array, C and DTilde are column
/// recurrences alpha_{i,j} = sum_v x_v alpha_{i,j-v-1} (j >= R), and D and
/// CTilde are row recurrences alpha_{i,j} = sum_v x_v alpha_{i-v-1,j} (i >= R).
enum class FrcKind { C, D, CTilde, DTilde };

std::string_view to_string(FrcKind kind);
FrcKind frc_kind_from_string(std::string_view name);

template <class T>
struct FrcSet {
    FrcKind kind = FrcKind::C;
    int n = 0;  // the lattice size parameter N
    int p = 1;
    std::vector<T> values;
    /// max |A x - rhs| of the defining square system (0 for rationals).
    double residual = 0.0;
};

/// Solves the square system whose matrix is H_{R-1} with reversed columns
/// (or rows), so its determinant is +-Delta_{R-1}. RankDeficient when it is
/// singular.
template <class T>
FrcSet<T> compute_frc(const MomentTable<T>& table, FrcKind kind, int n);

/// Moment depth needed by compute_frc and by the overdetermination check
/// with `extra` further indices.
int frc_table_depth(FrcKind kind, int n, int p, int extra = 0);

/// Positions (i, j) of the Hankel array where the recurrence fails, checked
/// on the `extra` further columns (rows) that the block structure links to
/// the solved one: every column for C, every row for CTilde, every r-th row
/// for D and every q-th column for DTilde. Exact for rationals, relative
/// 1e-9 for floats.
struct HankelPosition {
    int i;
    int j;
};

template <class T>
std::vector<HankelPosition> frc_recurrence_violations(const MomentTable<T>& table, const FrcSet<T>& frc, int extra);

/// lambda^deg + c_0 lambda^{deg-1} + ... + c_{deg-1}
template <class T>
struct CharPoly {
    int degree = 0;
    std::vector<T> coeffs;
};

CharPoly<Rational> charpoly_faddeev_leverrier(const DenseMatrix<Rational>& m);
CharPoly<double> charpoly_hessenberg(const DenseMatrix<double>& m);

template <class T>
CharPoly<T> charpoly(const BandMatrix<T>& m);

/// max |P(M)| entrywise.
template <class T>
T cayley_hamilton_residual(const DenseMatrix<T>& m, const CharPoly<T>& poly);

/// Rank condition for a finite operator of size R = N + q + 1: Delta_{R-1}
/// is nonzero and Delta_R vanishes.
struct MinimalityReport {
    Rational delta_rank_minus_one;
    Rational delta_rank;
    bool ok = false;
};

MinimalityReport minimal_rank_check(const MomentTable<Rational>& table, int n);

template <class F>
struct IntegralMonitor {
    std::string name;
    /// coefficients, integrals of the coefficients (empty when absent), time
    std::function<F(const std::vector<F>&, const std::vector<F>&, F)> evaluate;
    bool needs_integrals = false;
};

struct MonitorResult {
    std::string name;
    std::vector<double> values;
    double initial = 0.0;
    /// max_t |value(t) - value(0)|
    double drift = 0.0;
};

template <class F>
std::vector<MonitorResult> monitor_integrals(const Trajectory<F>& traj, const std::vector<IntegralMonitor<F>>& monitors);

/// Sum lattice with p = 2 and N = 3 (four coefficients):
///   I1 = b0 + b1 + b2 + b3, I2 = -b0 b3, J2 = -b0 b2 / b1,
///   J1 = b0 (b1 + b2) / (b1 a0(0) exp(int_0^t b1)).
template <class F>
std::vector<IntegralMonitor<F>> example_monitors(F a0_seed = F(1));

/// One monitor per FRC value of a finite lattice with N + 1 coefficients,
/// recomputed from the moments of the instantaneous Lax matrix (float
/// arithmetic).
template <class F>
std::vector<IntegralMonitor<F>> frc_monitors(FrcKind kind, int order, int n);

/// One monitor per characteristic-polynomial coefficient of the open-end
/// Lax matrix L(t) of a lattice with N + 1 coefficients.
template <class F>
std::vector<IntegralMonitor<F>> charpoly_monitors(Family family, int order, int n);

struct NonconstancyReport {
    double d2_drift = 0.0;
    double d5_drift = 0.0;
    /// max_t |D~_2(t) - (b0 + b0 b2 / b1)| and the same for D~_5 = -b0 b2 / b1.
    double closed_form_gap = 0.0;
    bool d2_moves = false;       // drift above 1e-4
    bool d5_conserved = false;   // drift at most 1e-8
};

/// D~_2 and D~_5 along a p = 2, N = 3 sum-lattice trajectory.
template <class F>
NonconstancyReport verify_d_tilde_nonconstancy(const Trajectory<F>& traj);

struct S31Report {
    Rational s31;
    Rational rhs;
    Rational s31_tilde;
    Rational rhs_tilde;
    bool identity_ok = false;
    bool tilde_ok = false;
    /// D~_2 and D~_5 from the FRC solve agree with a0 (a1 + a3) and -a0 a3.
    bool frc_ok = false;
};

/// S_3^1 = (a1 + a3) S_1^2 - a0 a3 S_0^1 for the p = 2, N = 4 product
/// lattice, and S~_3^1 = D~_2 S~_1^2 + D~_5 S~_0^1 after the moment-level map.
S31Report verify_s31_identity(const LatticeState<Rational>& a);

}  // namespace bogolat

#endif  // BOGOLAT_INVARIANTS_HPP_
