#include "mslice/convex_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace mslice {

SubsetIndicator::SubsetIndicator(std::vector<Configuration> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("a subset indicator needs at least one member");
    const std::size_t len = members_.front().size();
    for (const auto& m : members_) {
        if (m.size() != len) throw std::invalid_argument("members must have equal length");
    }
    std::vector<Configuration> sorted = members_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("members must be pairwise distinct");
    }
}

bool SubsetIndicator::contains(const Configuration& config) const {
    return std::find(members_.begin(), members_.end(), config) != members_.end();
}

std::vector<std::vector<std::uint8_t>> SubsetIndicator::disagreement(const Configuration& omega) const {
    if (omega.size() != length()) throw std::invalid_argument("query length does not match the set");
    std::vector<std::vector<std::uint8_t>> b(members_.size(), std::vector<std::uint8_t>(omega.size()));
    for (std::size_t a = 0; a < members_.size(); ++a) {
        for (std::size_t k = 0; k < omega.size(); ++k) b[a][k] = members_[a][k] != omega[k];
    }
    return b;
}

double alpha_distance(const Configuration& omega, const SubsetIndicator& a, const std::vector<double>& alpha) {
    if (omega.size() != a.length() || alpha.size() != a.length()) {
        throw std::invalid_argument("alpha_distance: length mismatch");
    }
    double ss = 0.0;
    for (const double x : alpha) ss += x * x;
    if (std::abs(std::sqrt(ss) - 1.0) > 1e-10) throw std::invalid_argument("alpha must be a unit vector");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : a.members()) {
        double d = 0.0;
        for (std::size_t k = 0; k < omega.size(); ++k) {
            if (m[k] != omega[k]) d += std::abs(alpha[k]);
        }
        best = std::min(best, d);
    }
    return best;
}

namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

}  // namespace

ConvexDistanceResult convex_distance(const Configuration& omega, const SubsetIndicator& a, double tol,
                                     std::size_t max_iterations) {
    const auto b = a.disagreement(omega);
    const std::size_t n = omega.size();

    // Members with identical disagreement rows are interchangeable.
    std::map<std::vector<std::uint8_t>, std::size_t> row_index;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> representative;
    for (std::size_t m = 0; m < b.size(); ++m) {
        if (row_index.emplace(b[m], rows.size()).second) {
            rows.emplace_back(b[m].begin(), b[m].end());
            representative.push_back(m);
        }
    }
    const std::size_t r = rows.size();

    ConvexDistanceResult out;
    out.weights.assign(a.size(), 0.0);

    std::size_t start = 0;
    double best_weight = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < r; ++m) {
        const double w = dot(rows[m], rows[m]);
        if (w < best_weight) {
            best_weight = w;
            start = m;
        }
    }
    std::vector<double> nu(r, 0.0);
    nu[start] = 1.0;
    if (best_weight == 0.0) {
        out.weights[representative[start]] = 1.0;
        return out;
    }

    std::vector<double> y(n);
    std::vector<double> dy(n);
    std::vector<double> g(r);
    double phi = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t m = 0; m < r; ++m) {
            if (nu[m] == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) y[k] += nu[m] * rows[m][k];
        }
        phi = dot(y, y);
        // Half-gradient: g_m = <row_m, y>.
        std::size_t fw = 0;
        std::size_t away = r;
        for (std::size_t m = 0; m < r; ++m) {
            g[m] = dot(rows[m], y);
            if (g[m] < g[fw]) fw = m;
            if (nu[m] > 0.0 && (away == r || g[m] > g[away])) away = m;
        }
        gap = 2.0 * (phi - g[fw]);
        if (gap <= tol) break;
        const double away_gap = 2.0 * (g[away] - phi);

        double gamma_max;
        bool toward = gap >= away_gap;
        if (toward) {
            for (std::size_t k = 0; k < n; ++k) dy[k] = rows[fw][k] - y[k];
            gamma_max = 1.0;
        } else {
            for (std::size_t k = 0; k < n; ++k) dy[k] = y[k] - rows[away][k];
            gamma_max = nu[away] / (1.0 - nu[away]);
        }
        const double curvature = dot(dy, dy);
        if (curvature <= 0.0) break;
        const double gamma = std::clamp(-dot(y, dy) / curvature, 0.0, gamma_max);
        if (toward) {
            for (auto& w : nu) w *= 1.0 - gamma;
            nu[fw] += gamma;
        } else {
            for (auto& w : nu) w *= 1.0 + gamma;
            nu[away] -= gamma;
            if (gamma == gamma_max) nu[away] = 0.0;
        }
    }
    out.value = std::sqrt(phi);
    out.gap = gap;
    out.iterations = it;
    for (std::size_t m = 0; m < r; ++m) out.weights[representative[m]] = nu[m];
    return out;
}

double convex_distance_bruteforce(const Configuration& omega, const SubsetIndicator& a, std::size_t grid) {
    if (a.size() > 5) throw std::invalid_argument("brute-force convex distance needs |A| <= 5");
    if (grid == 0) throw std::invalid_argument("grid resolution must be positive");
    const auto b = a.disagreement(omega);
    const std::size_t m = b.size();
    const std::size_t n = omega.size();
    const double h = 1.0 / static_cast<double>(grid);

    if (m == 1) {
        double s = 0.0;
        for (const auto v : b[0]) s += v;
        return std::sqrt(s);
    }

    // Outer members take integer counts c_0..c_{m-3}; the last two split the
    // remainder as (lambda, rest - lambda). For fixed outer counts the
    // objective is a convex quadratic in lambda, so its minimum over the
    // integer grid sits at the floor or ceiling of the continuous minimizer.
    std::vector<std::size_t> counts(m - 2, 0);
    std::vector<double> base(n);
    std::vector<double> diff(n);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::size_t used = 0;
        for (const auto c : counts) used += c;
        {
            const std::size_t rest = grid - used;
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0.0;
                for (std::size_t j = 0; j + 2 < m; ++j) s += static_cast<double>(counts[j]) * b[j][k];
                // lambda counts go to member m-2, the rest to member m-1
                base[k] = (s + static_cast<double>(rest) * b[m - 1][k]) * h;
                diff[k] = (static_cast<double>(b[m - 2][k]) - static_cast<double>(b[m - 1][k])) * h;
            }
            double bd = 0.0;
            double dd = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                bd += base[k] * diff[k];
                dd += diff[k] * diff[k];
            }
            std::vector<std::size_t> candidates = {0, rest};
            if (dd > 0.0) {
                const double star = std::clamp(-bd / dd, 0.0, static_cast<double>(rest));
                candidates.push_back(static_cast<std::size_t>(std::floor(star)));
                candidates.push_back(std::min(rest, static_cast<std::size_t>(std::ceil(star))));
            }
            for (const auto lam : candidates) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double v = base[k] + static_cast<double>(lam) * diff[k];
                    s += v * v;
                }
                best = std::min(best, s);
            }
        }
        std::size_t pos = 0;
        while (pos < counts.size()) {
            ++counts[pos];
            std::size_t total = 0;
            for (const auto c : counts) total += c;
            if (total <= grid) break;
            counts[pos++] = 0;
        }
        if (pos == counts.size()) break;
    }
    return std::sqrt(best);
}

CheckReport check_self_bounding(const StateSpace& space, const SubsetIndicator& a, double tol) {
    const std::size_t states = space.size();
    std::vector<double> f(states);
    for (std::size_t s = 0; s < states; ++s) {
        const double d = convex_distance(space.state(s), a).value;
        f[s] = d * d / 4.0;
    }
    const double inv_two_n = 1.0 / (2.0 * static_cast<double>(space.length()));
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    std::string worst_which = "gamma_plus";
    for (std::size_t s = 0; s < states; ++s) {
        double gp = 0.0;
        for (std::size_t p = 0; p < space.pair_count(); ++p) {
            const double diff = f[s] - f[space.switched(s, p)];
            if (diff > 0.0) gp += diff * diff;
            if (1.0 - std::abs(diff) < worst_slack) {
                worst_slack = 1.0 - std::abs(diff);
                worst_lhs = std::abs(diff);
                worst_rhs = 1.0;
                worst_which = "switch_difference";
            }
        }
        gp *= inv_two_n;
        if (f[s] - gp < worst_slack) {
            worst_slack = f[s] - gp;
            worst_lhs = gp;
            worst_rhs = f[s];
            worst_which = "gamma_plus";
        }
    }
    return make_report("self_bounding", space.spec().describe(), worst_lhs, worst_rhs, tol, worst_which);
}

namespace {

std::set<Configuration> permutation_orbit(const Configuration& c) {
    std::vector<double> e(c.begin(), c.end());
    std::sort(e.begin(), e.end());
    std::set<Configuration> out;
    do {
        out.insert(Configuration(e));
    } while (std::next_permutation(e.begin(), e.end()));
    return out;
}

}  // namespace

bool is_symmetric_set(const SubsetIndicator& a) {
    for (const auto& m : a.members()) {
        for (const auto& p : permutation_orbit(m)) {
            if (!a.contains(p)) return false;
        }
    }
    return true;
}

SubsetIndicator symmetric_closure(const SubsetIndicator& a) {
    std::set<Configuration> all;
    for (const auto& m : a.members()) {
        const auto orbit = permutation_orbit(m);
        all.insert(orbit.begin(), orbit.end());
    }
    return SubsetIndicator(std::vector<Configuration>(all.begin(), all.end()));
}

CheckReport check_swor_convex_distance(const PrefixSpace& space, const SubsetIndicator& a,
                                       const std::vector<double>& t_grid, double tol) {
    if (a.length() != space.length()) throw std::invalid_argument("set and prefix space lengths differ");
    if (!is_symmetric_set(a)) throw std::invalid_argument("the convex distance bound needs a symmetric set");
    double mass = 0.0;
    for (const auto& m : a.members()) mass += space.weight(space.index_of(m));
    if (mass < 0.5 - 1e-12) throw std::invalid_argument("the convex distance bound needs P(A) >= 1/2");

    std::vector<double> d(space.size());
    for (std::size_t s = 0; s < space.size(); ++s) d[s] = convex_distance(space.prefix(s), a).value;

    const double frac = 1.0 - static_cast<double>(space.length()) / static_cast<double>(space.spec().size());
    std::vector<CheckReport> reports;
    for (const double t : t_grid) {
        double tail = 0.0;
        for (std::size_t s = 0; s < space.size(); ++s) {
            if (d[s] >= t - 1e-9) tail += space.weight(s);
        }
        double bound;
        if (frac <= 0.0) bound = t > 0.0 ? 0.0 : std::numbers::e;
        else bound = std::numbers::e * std::exp(-t * t / (16.0 * frac));
        reports.push_back(make_report("swor_convex_distance", space.spec().describe(), tail, bound, tol,
                                      "t=" + std::to_string(t)));
    }
    return worst_of(reports);
}

}  // namespace mslice
