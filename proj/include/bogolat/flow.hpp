#ifndef BOGOLAT_FLOW_HPP_
#define BOGOLAT_FLOW_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "bogolat/lattice.hpp"
#include "bogolat/moments.hpp"
#include "bogolat/scalar.hpp"

namespace bogolat {

enum class Method { MomentSeries, RK4 };

std::string_view to_string(Method method);

/// Coefficient history of one lattice. values[i] holds the coefficients at
/// times[i]; integrals[i][c], when present, is the integral of coefficient
/// c over [0, times[i]].
template <class T>
struct Trajectory {
    Family family = Family::Product;
    int order = 1;
    Boundary boundary = Boundary::OpenEnd;
    Method method = Method::RK4;
    std::vector<T> times;
    std::vector<std::vector<T>> values;
    std::vector<std::vector<T>> integrals;
    /// RK4: step-doubling error estimate per sample (max over coefficients).
    /// Moment series: tail estimate per sample.
    std::vector<double> diagnostics;

    std::size_t samples() const { return times.size(); }
    bool has_integrals() const { return !integrals.empty(); }
    LatticeState<T> state(std::size_t i) const {
        return LatticeState<T>{family, order, values.at(i), boundary, times.at(i)};
    }
};

/// dS/dt from the Lax dynamics, on tables of the eponymous operators:
///   product (L1, q = 1):  S'_k^{m,1} = S_{k+r+1}^{m,1} - S_{r+1}^{1,1} S_k^{m,1}
///   sum     (L2, r = 1):  S'_k^{1,n} = S_{k+q+1}^{1,n} - S_{q+n}^{1,n} S_k^{1,n}
/// The result covers k = 0..K-(p+1).
template <class T>
MomentTable<T> moment_rhs(const MomentTable<T>& table, Family family);

struct SeriesOptions {
    /// Upper bound L_max on the number of terms beyond the constant one.
    int max_terms = 60;
    /// Floats stop once |term| / |partial sum| drops below this for two
    /// consecutive terms in every entry. Rationals always use max_terms terms.
    double tolerance = 1e-14;
    /// Fixed-length evaluation for floats as well.
    bool adaptive = true;
};

template <class T>
struct SeriesEvaluation {
    MomentTable<T> table;
    int terms = 0;
    double tail_estimate = 0.0;
};

/// Closed-form moment evolution
///   S_k(t) = sum_l S_{k+(p+1)l}(0) t^l / l!  /  sum_l S^{1,n}_{n-1+(p+1)l}(0) t^l / l!
/// (n = 1 for the product family, where p = r; p = q for the sum family).
/// Returns moments k = 0..max_k; `base` must reach max_k + (p+1) L.
template <class T>
SeriesEvaluation<T> evolve_moments_series(const MomentTable<T>& base, Family family, const T& t, int max_k,
                                          const SeriesOptions& options = {});

struct Rk4Options {
    /// Co-integrate the time integral of every coefficient.
    bool accumulate = false;
    /// Repeat the run with dt/2 and record |y_dt - y_dt/2| / 15 per sample.
    bool estimate_error = false;
    /// Record every n-th step (the final time is always recorded).
    int record_every = 1;
    double overflow_guard = 1e150;
};

/// Classical fixed-step RK4 on the lattice equations with zero padding.
/// t_end must be an integer multiple of dt. Instantiated for double and
/// long double.
template <class F>
Trajectory<F> rk4_integrate(const LatticeState<F>& initial, F t_end, F dt, const Rk4Options& options = {});

/// Moments at 0, series evolution to each grid time, and reconstruction of
/// coefficients 0..depth-1. The initial window defines a finite (zero-padded)
/// operator. Grid times must be nonnegative and increasing; t = 0 returns the
/// initial data unchanged.
template <class T>
Trajectory<T> solve_cauchy(const LatticeState<T>& initial, std::span<const T> t_grid, int depth,
                           const SeriesOptions& options = {});

/// Running integral of uniformly sampled values: Simpson on even prefixes,
/// Simpson plus a 3/8 panel on odd prefixes, a three-point rule for the
/// first step.
template <class F>
std::vector<F> cumulative_simpson(std::span<const F> times, std::span<const F> values);

}  // namespace bogolat

#endif  // BOGOLAT_FLOW_HPP_
