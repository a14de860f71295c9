#pragma once

// Expected log-growth U(F,p) = p log(1+F) + q log(1-F), its Kelly
// maximiser, the break-even root F* and the regime partition of [0,1].

#include <limits>
#include <vector>

#include "kelly/probability.hpp"

namespace kelly {

/// Value returned by utility() for a full stake that can lose everything.
inline constexpr double kRuinUtility = -std::numeric_limits<double>::infinity();

/// Distance kept from F=1 when bracketing.
inline constexpr double kEdgeGuard = 1e-12;
inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr double kDefaultZeroTol = 1e-10;
inline constexpr int kMaxBisections = 200;

double utility(BetFraction f, Probability p);

struct UtilityDerivatives {
    double first;
    double second;  // always < 0 for p in (0,1)
};

UtilityDerivatives utility_derivatives(BetFraction f, Probability p);

/// p - q. Throws NoEdgeError for p < 1/2.
double kelly_fraction(Probability p);

/// Break-even root of U(F,p) = 0 in (F_K, 1), by bisection.
/// Throws NoEdgeError for p <= 1/2 and DegenerateError for p = 1 (or when
/// the root is not representable below 1).
double f_star(Probability p, double tol = kDefaultRootTol);

struct BreakEvenSeries {
    double approx;   // 2 F_K + epsilon
    double epsilon;  // F_K^3 / (3/8 - F_K^2)
};

/// Small-edge series for F*. Throws ApproximationDomainError if F_K^2 >= 3/8.
BreakEvenSeries f_star_approx(Probability p);

struct RegimePartition {
    double p;
    double f_kelly;
    double f_star;
    double f_star_approx;
    double epsilon;
};

RegimePartition regime_partition(Probability p);

enum class Regime { GrowthSubmartingale, BreakEvenMartingale, DecaySupermartingale };

struct RegimeLabel {
    Regime regime;
    double utility_value;
};

const char* to_string(Regime regime);

/// Classification by the sign of U, i.e. of the drift of log-wealth.
RegimeLabel classify(BetFraction f, Probability p, double zero_tol = kDefaultZeroTol);

/// U(F,p) - U(F,p_hat) for p > p_hat > 1/2, 0 < F < 1.
double utility_dominance(BetFraction f, Probability p, Probability p_hat);

struct CurvePoint {
    double f;
    double u;
};

/// U on a uniform grid over [0,1]; the last point is the F=1 value.
std::vector<CurvePoint> utility_curve(Probability p, int grid_points);

}  // namespace kelly
