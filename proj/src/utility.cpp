#include "kelly/utility.hpp"

#include <cmath>
#include <string>

#include "kelly/bernoulli.hpp"
#include "kelly/errors.hpp"

namespace kelly {
namespace {

void require_edge(const Probability& p) {
    if (p.value() < 0.5) {
        throw NoEdgeError("no edge at p=" + std::to_string(p.value()) + ": the game is not played");
    }
}

}  // namespace

double utility(BetFraction f, Probability p) {
    const double fv = f.value();
    const double pv = p.value();
    const double qv = 1.0 - pv;
    const double win = pv == 0.0 ? 0.0 : pv * std::log1p(fv);
    if (fv >= 1.0) return qv == 0.0 ? win : kRuinUtility;
    const double loss = qv == 0.0 ? 0.0 : qv * std::log1p(-fv);
    return win + loss;
}

UtilityDerivatives utility_derivatives(BetFraction f, Probability p) {
    const double fv = f.value();
    if (fv >= 1.0) throw DomainError("utility derivatives undefined at F=1");
    const double pv = p.value();
    const double qv = 1.0 - pv;
    const double up = 1.0 + fv;
    const double down = 1.0 - fv;
    return {pv / up - qv / down, -pv / (up * up) - qv / (down * down)};
}

double kelly_fraction(Probability p) {
    require_edge(p);
    return GameParams(p).edge();
}

double f_star(Probability p, double tol) {
    if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
    if (p.value() <= 0.5) {
        throw NoEdgeError("no break-even root without an edge (p=" + std::to_string(p.value()) + ")");
    }
    if (p.value() >= 1.0) throw DegenerateError("p=1: U > 0 on all of [0,1), no break-even root");
    const double fk = kelly_fraction(p);
    double lo = fk + kEdgeGuard;
    double hi = 1.0 - kEdgeGuard;
    if (utility(hi, p) >= 0.0) hi = std::nextafter(1.0, 0.0);
    if (utility(hi, p) >= 0.0) {
        throw DegenerateError("break-even root is not representable below 1 at p=" +
                              std::to_string(p.value()));
    }
    if (lo >= hi) lo = fk;
    double best = hi;
    double best_abs = std::abs(utility(hi, p));
    for (int i = 0; i < kMaxBisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double u = utility(mid, p);
        if (std::abs(u) < best_abs) {
            best = mid;
            best_abs = std::abs(u);
        }
        if (best_abs <= tol) break;
        if (mid == lo || mid == hi) break;
        (u > 0.0 ? lo : hi) = mid;
    }
    return best;
}

BreakEvenSeries f_star_approx(Probability p) {
    const double fk = kelly_fraction(p);
    const double fk2 = fk * fk;
    if (fk2 >= 0.375) {
        throw ApproximationDomainError("series for F* invalid: F_K^2=" + std::to_string(fk2) +
                                       " >= 3/8");
    }
    const double epsilon = fk2 * fk / (0.375 - fk2);
    return {2.0 * fk + epsilon, epsilon};
}

RegimePartition regime_partition(Probability p) {
    const auto series = f_star_approx(p);
    return {p.value(), kelly_fraction(p), f_star(p), series.approx, series.epsilon};
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::GrowthSubmartingale: return "growth-submartingale";
        case Regime::BreakEvenMartingale: return "break-even-martingale";
        case Regime::DecaySupermartingale: return "decay-supermartingale";
    }
    return "unknown";
}

RegimeLabel classify(BetFraction f, Probability p, double zero_tol) {
    const double u = utility(f, p);
    if (u > zero_tol) return {Regime::GrowthSubmartingale, u};
    if (u < -zero_tol) return {Regime::DecaySupermartingale, u};
    return {Regime::BreakEvenMartingale, u};
}

double utility_dominance(BetFraction f, Probability p, Probability p_hat) {
    if (!(p.value() > p_hat.value() && p_hat.value() > 0.5)) {
        throw DomainError("dominance requires p > p_hat > 1/2, got p=" + std::to_string(p.value()) +
                          ", p_hat=" + std::to_string(p_hat.value()));
    }
    const double fv = f.value();
    if (!(fv > 0.0 && fv < 1.0)) throw DomainError("dominance requires 0 < F < 1");
    const double dp = p.value() - p_hat.value();
    return dp * std::log1p(fv) - dp * std::log1p(-fv);
}

std::vector<CurvePoint> utility_curve(Probability p, int grid_points) {
    if (grid_points < 2) throw DomainError("utility_curve needs at least 2 grid points");
    std::vector<CurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(grid_points));
    const int last = grid_points - 1;
    for (int i = 0; i <= last; ++i) {
        const double f = i == last ? 1.0 : static_cast<double>(i) / last;
        curve.push_back({f, utility(f, p)});
    }
    return curve;
}

}  // namespace kelly
