#include "mslice/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mslice/random.hpp"

namespace mslice {

namespace {

void require_size(std::size_t states, std::span<const double> f) {
    if (f.size() != states) throw std::invalid_argument("function table does not match the state space");
}

double weighted_mean(std::span<const double> w, std::span<const double> f) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += w[k] * f[k];
    return s;
}

std::vector<double> uniform_weights(const StateSpace& space) {
    return std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size()));
}

// Entropy with the convention 0 log 0 = 0; negative entries are rejected.
double entropy_nonnegative(std::span<const double> w, std::span<const double> f) {
    double m = 0.0;
    double flogf = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] < 0.0 || !std::isfinite(f[k])) throw std::invalid_argument("entropy needs nonnegative values");
        m += w[k] * f[k];
        if (f[k] > 0.0) flogf += w[k] * f[k] * std::log(f[k]);
    }
    return m > 0.0 ? flogf - m * std::log(m) : 0.0;
}

double entropy_positive(std::span<const double> w, std::span<const double> f) {
    for (const double v : f) {
        if (!(v > 0.0)) throw std::invalid_argument("entropy needs strictly positive values");
    }
    return entropy_nonnegative(w, f);
}

double variance_weighted(std::span<const double> w, std::span<const double> f) {
    const double m = weighted_mean(w, f);
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += w[k] * (f[k] - m) * (f[k] - m);
    return s;
}

Table map_values(std::span<const double> f, double (*fn)(double)) {
    Table out(f.size());
    std::transform(f.begin(), f.end(), out.begin(), fn);
    return out;
}

double exp_value(double x) { return std::exp(x); }
double square_value(double x) { return x * x; }

}  // namespace

std::string to_string(DifferenceOperator op) {
    switch (op) {
        case DifferenceOperator::Gamma: return "gamma";
        case DifferenceOperator::GammaPlus: return "gamma_plus";
        case DifferenceOperator::H: return "h";
        case DifferenceOperator::HPlus: return "h_plus";
    }
    return "unknown";
}

Table tabulate(const StateSpace& space, const std::function<double(const Configuration&)>& f) {
    Table out(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) out[k] = f(space.state(k));
    return out;
}

Table tabulate(const PrefixSpace& space, const std::function<double(const Configuration&)>& f) {
    Table out(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) out[k] = f(space.prefix(k));
    return out;
}

double expectation(const StateSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    double s = 0.0;
    for (const double v : f) s += v;
    return s / static_cast<double>(f.size());
}

double expectation(const PrefixSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    return weighted_mean(space.weights(), f);
}

double entropy(const StateSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    return entropy_positive(uniform_weights(space), f);
}

double entropy(const PrefixSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    return entropy_positive(space.weights(), f);
}

double variance(const StateSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    return variance_weighted(uniform_weights(space), f);
}

double variance(const PrefixSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    return variance_weighted(space.weights(), f);
}

Table difference_squared(const StateSpace& space, std::span<const double> f, DifferenceOperator op) {
    require_size(space.size(), f);
    if (op != DifferenceOperator::Gamma && op != DifferenceOperator::GammaPlus) {
        throw std::invalid_argument("H operators act on prefix spaces");
    }
    const bool plus = op == DifferenceOperator::GammaPlus;
    const double scale = 1.0 / (2.0 * static_cast<double>(space.length()));
    Table out(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
        double s = 0.0;
        for (std::size_t p = 0; p < space.pair_count(); ++p) {
            double d = f[k] - f[space.switched(k, p)];
            if (plus) d = std::max(d, 0.0);
            s += d * d;
        }
        out[k] = scale * s;
    }
    return out;
}

Table difference_squared(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op) {
    require_size(space.size(), f);
    if (op != DifferenceOperator::H && op != DifferenceOperator::HPlus) {
        throw std::invalid_argument("Gamma operators act on full state spaces");
    }
    const bool plus = op == DifferenceOperator::HPlus;
    Table out(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < space.length(); ++i) {
            double lo = f[k];
            double hi = f[k];
            for (const auto r : space.replacements(k, i)) {
                lo = std::min(lo, f[r]);
                hi = std::max(hi, f[r]);
            }
            const double d = plus ? f[k] - lo : hi - lo;
            s += d * d;
        }
        out[k] = 0.5 * s;
    }
    return out;
}

Table gamma(const StateSpace& space, std::span<const double> f, DifferenceOperator op) {
    return map_values(difference_squared(space, f, op), [](double x) { return std::sqrt(x); });
}

Table gamma(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op) {
    return map_values(difference_squared(space, f, op), [](double x) { return std::sqrt(x); });
}

double dirichlet_form(const StateSpace& space, std::span<const double> f, std::span<const double> g) {
    require_size(space.size(), f);
    require_size(space.size(), g);
    double s = 0.0;
    for (std::size_t k = 0; k < space.size(); ++k) {
        for (std::size_t p = 0; p < space.pair_count(); ++p) {
            const std::size_t j = space.switched(k, p);
            s += (f[k] - f[j]) * (g[k] - g[j]);
        }
    }
    return s / (2.0 * static_cast<double>(space.length()) * static_cast<double>(space.size()));
}

double lsi_constant(const MultisliceSpec& spec) {
    return 2.0 * std::log(static_cast<double>(spec.size()) / static_cast<double>(spec.kappa_min())) /
           std::log(2.0);
}

double beckner_constant(const MultisliceSpec& spec, double p) {
    const double n = static_cast<double>(spec.size());
    return 4.0 * n / (p * (n + 2.0));
}

double moment_theta() {
    const double r = std::sqrt(std::numbers::e);
    return r / (r - 1.0);
}

CheckReport check_local_variance_identity(const StateSpace& space, std::span<const double> f, double tol) {
    require_size(space.size(), f);
    const std::size_t n = space.length();
    double worst = 0.0;
    std::vector<std::uint8_t> key(n);
    for (std::size_t p = 0; p < space.pair_count(); ++p) {
        const auto [i, j] = space.pair(p);
        std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> groups;
        for (std::size_t k = 0; k < space.size(); ++k) {
            const auto lv = space.levels(k);
            key.assign(lv.begin(), lv.end());
            key[i] = key[j] = 0xFF;
            groups[key].push_back(k);
        }
        for (const auto& [_, members] : groups) {
            for (const auto k : members) {
                double msd = 0.0;
                for (const auto m : members) msd += (f[k] - f[m]) * (f[k] - f[m]);
                const double rhs = 2.0 * msd / static_cast<double>(members.size());
                const double d = f[k] - f[space.switched(k, p)];
                worst = std::max(worst, std::abs(d * d - rhs));
            }
        }
    }
    return make_report("local_variance_identity", space.spec().describe(), worst, 0.0, tol);
}

CheckReport check_lsi(const StateSpace& space, std::span<const double> f, double tol) {
    require_size(space.size(), f);
    const auto w = uniform_weights(space);
    const double lhs = entropy_nonnegative(w, map_values(f, square_value));
    const double energy = weighted_mean(w, difference_squared(space, f, DifferenceOperator::Gamma));
    return make_report("lsi", space.spec().describe(), lhs, 2.0 * lsi_constant(space.spec()) * energy, tol);
}

CheckReport check_poincare(const StateSpace& space, std::span<const double> f, double sigma_sq, double tol) {
    require_size(space.size(), f);
    const auto w = uniform_weights(space);
    const double energy = weighted_mean(w, difference_squared(space, f, DifferenceOperator::Gamma));
    return make_report("poincare", space.spec().describe(), variance_weighted(w, f), sigma_sq * energy, tol);
}

CheckReport check_mlsi(const StateSpace& space, std::span<const double> f, DifferenceOperator op, double sigma_sq,
                       double tol) {
    require_size(space.size(), f);
    const auto w = uniform_weights(space);
    const Table ef = map_values(f, exp_value);
    const Table g2 = difference_squared(space, f, op);
    double rhs = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) rhs += w[k] * g2[k] * ef[k];
    rhs *= sigma_sq / 2.0;
    return make_report("mlsi_" + to_string(op), space.spec().describe(), entropy_positive(w, ef), rhs, tol);
}

CheckReport check_beckner(const StateSpace& space, std::span<const double> f, double p, double tol) {
    require_size(space.size(), f);
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("Beckner exponent must lie in (1, 2]");
    for (const double v : f) {
        if (v < 0.0) throw std::invalid_argument("Beckner inequality needs a nonnegative function");
    }
    Table fp(f.size());
    Table fp1(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        fp[k] = std::pow(f[k], p);
        fp1[k] = std::pow(f[k], p - 1.0);
    }
    const double lhs = expectation(space, fp) - std::pow(expectation(space, f), p);
    const double rhs = beckner_constant(space.spec(), p) * p / 2.0 * dirichlet_form(space, f, fp1);
    std::ostringstream id;
    id << "beckner_p" << p;
    return make_report(id.str(), space.spec().describe(), lhs, rhs, tol);
}

CheckReport check_moment_estimate(const StateSpace& space, std::span<const double> f, double p, double tol) {
    require_size(space.size(), f);
    if (!(p >= 2.0)) throw std::invalid_argument("moment estimate needs p >= 2");
    const double m = expectation(space, f);
    const Table g = gamma(space, f, DifferenceOperator::Gamma);
    double lp = 0.0;
    double gp = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        lp += std::pow(std::abs(f[k] - m), p);
        gp += std::pow(g[k], p);
    }
    const double count = static_cast<double>(f.size());
    const double lhs = std::pow(lp / count, 1.0 / p);
    const double rhs = std::sqrt(4.0 * moment_theta() * p) * std::pow(gp / count, 1.0 / p);
    std::ostringstream id;
    id << "moment_p" << p;
    return make_report(id.str(), space.spec().describe(), lhs, rhs, tol);
}

CheckReport check_gradient_estimate(const StateSpace& space, const MultilinearPolynomial& poly, double tol) {
    if (poly.dimension() != space.length()) throw std::invalid_argument("polynomial dimension does not match N");
    const Table f = tabulate(space, [&](const Configuration& w) { return poly(w); });
    const Table g2 = difference_squared(space, f, DifferenceOperator::Gamma);
    const double diam = space.spec().diameter();
    const double n = static_cast<double>(space.length());
    std::vector<CheckReport> reports;
    reports.reserve(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
        const auto grad = gradient(poly, space.state(k));
        double grad_sq = 0.0;
        for (const double x : grad) grad_sq += x * x;
        const double hs_sq = hessian(poly, space.state(k)).squaredNorm();
        const double rhs = 1.5 * diam * diam * grad_sq + 0.75 * std::pow(diam, 4) / n * hs_sq;
        reports.push_back(make_report("gradient_estimate", space.spec().describe(), g2[k], rhs, tol));
    }
    return worst_of(reports);
}

CheckReport check_convex_mlsi(const StateSpace& space, const ScalarField& f, const GradientField& grad,
                              double tol) {
    const std::size_t n = space.length();
    Table fv(space.size());
    Table grad_sq(space.size());
    std::vector<double> x(n);
    for (std::size_t k = 0; k < space.size(); ++k) {
        const auto& s = space.state(k);
        std::copy(s.begin(), s.end(), x.begin());
        fv[k] = f(x);
        const auto g = grad(x);
        if (g.size() != n) throw std::invalid_argument("gradient has the wrong dimension");
        double gs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
            const double xi = x[i];
            x[i] = xi + h;
            const double up = f(x);
            x[i] = xi - h;
            const double down = f(x);
            x[i] = xi;
            const double fd = (up - down) / (2.0 * h);
            if (std::abs(fd - g[i]) > 1e-6 * std::max(1.0, std::abs(g[i]))) {
                throw std::invalid_argument("supplied gradient disagrees with finite differences");
            }
            gs += g[i] * g[i];
        }
        grad_sq[k] = gs;
    }
    const auto w = uniform_weights(space);
    const Table ef = map_values(fv, exp_value);
    double rhs = 0.0;
    for (std::size_t k = 0; k < ef.size(); ++k) rhs += w[k] * ef[k] * grad_sq[k];
    const double diam = space.spec().diameter();
    rhs *= 4.0 * diam * diam;
    return make_report("convex_mlsi", space.spec().describe(), entropy_positive(w, ef), rhs, tol);
}

bool is_symmetric_function(const PrefixSpace& space, std::span<const double> f) {
    require_size(space.size(), f);
    std::map<std::vector<std::uint8_t>, double> seen;
    for (std::size_t k = 0; k < space.size(); ++k) {
        const auto lv = space.levels(k);
        std::vector<std::uint8_t> key(lv.begin(), lv.end());
        std::sort(key.begin(), key.end());
        const auto [it, inserted] = seen.emplace(std::move(key), f[k]);
        if (!inserted && std::abs(it->second - f[k]) > 1e-12 * std::max(1.0, std::abs(f[k]))) return false;
    }
    return true;
}

namespace {

std::string prefix_label(const PrefixSpace& space) {
    return space.spec().describe() + " n=" + std::to_string(space.length());
}

double sampling_factor(const PrefixSpace& space) {
    return 1.0 - static_cast<double>(space.length()) / static_cast<double>(space.spec().size());
}

}  // namespace

CheckReport check_swor_mlsi(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op,
                            double tol) {
    require_size(space.size(), f);
    if (op != DifferenceOperator::H && op != DifferenceOperator::HPlus) {
        throw std::invalid_argument("prefix-space mLSI uses the H operators");
    }
    if (!is_symmetric_function(space, f)) throw std::invalid_argument("function is not symmetric");
    const double sigma_sq = (op == DifferenceOperator::H ? 4.0 : 8.0) * sampling_factor(space);
    const auto& w = space.weights();
    const Table ef = map_values(f, exp_value);
    const Table h2 = difference_squared(space, f, op);
    double rhs = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) rhs += w[k] * h2[k] * ef[k];
    rhs *= sigma_sq / 2.0;
    return make_report("swor_mlsi_" + to_string(op), prefix_label(space), entropy_positive(w, ef), rhs, tol);
}

CheckReport check_swor_lsi(const PrefixSpace& space, std::span<const double> f, double tol) {
    require_size(space.size(), f);
    if (!is_symmetric_function(space, f)) throw std::invalid_argument("function is not symmetric");
    const double sigma_sq = lsi_constant(space.spec()) * sampling_factor(space);
    const auto& w = space.weights();
    const double lhs = entropy_nonnegative(w, map_values(f, square_value));
    const double rhs = 2.0 * sigma_sq * weighted_mean(w, difference_squared(space, f, DifferenceOperator::H));
    return make_report("swor_lsi", prefix_label(space), lhs, rhs, tol);
}

std::vector<std::size_t> coarsening_map(const MultisliceSpec& spec) {
    std::vector<std::size_t> psi;
    psi.reserve(spec.size());
    for (std::size_t l = 0; l < spec.levels(); ++l) psi.insert(psi.end(), spec.kappa()[l], l);
    return psi;
}

Configuration coarsen(const MultisliceSpec& spec, const Configuration& permutation) {
    if (permutation.size() != spec.size()) throw std::invalid_argument("permutation length does not match N");
    const auto psi = coarsening_map(spec);
    std::vector<double> out(permutation.size());
    for (std::size_t k = 0; k < permutation.size(); ++k) {
        const double v = permutation[k];
        if (v < 1.0 || v > static_cast<double>(spec.size()) || v != std::floor(v)) {
            throw std::invalid_argument("entries of a permutation must be 1..N");
        }
        out[k] = spec.value(psi[static_cast<std::size_t>(v) - 1]);
    }
    return Configuration(std::move(out));
}

CheckReport check_projection_identities(const StateSpace& space, std::span<const double> f,
                                        std::span<const double> g, double tol) {
    require_size(space.size(), f);
    require_size(space.size(), g);
    const auto& spec = space.spec();
    if (spec.size() > 8) throw EnumerationTooLarge("projection identities enumerate S_N, N <= 8");
    const StateSpace perms(MultisliceSpec::permutations(spec.size()));
    Table fp(perms.size());
    Table gp(perms.size());
    for (std::size_t k = 0; k < perms.size(); ++k) {
        const std::size_t idx = space.index_of(coarsen(spec, perms.state(k)));
        fp[k] = f[idx];
        gp[k] = g[idx];
    }
    const double mean_err = std::abs(expectation(space, f) - expectation(perms, fp));
    const double form_err = std::abs(dirichlet_form(space, f, g) - dirichlet_form(perms, fp, gp));
    return make_report("projection_identities", spec.describe(), std::max(mean_err, form_err), 0.0, tol);
}

std::vector<MultisliceSpec> default_suite_specs() {
    return {
        MultisliceSpec({1, 1}, {0.0, 1.0}),
        MultisliceSpec({2, 1}, {0.0, 1.0}),
        MultisliceSpec({2, 2}, {-1.0, 1.0}),
        MultisliceSpec({3, 2}, {0.0, 1.0}),
        MultisliceSpec({2, 2, 1}, {0.0, 1.0, 3.0}),
        MultisliceSpec({1, 1, 1, 1}, {1.0, 2.0, 3.0, 4.0}),
        MultisliceSpec({3, 3}, {0.0, 1.0}),
        MultisliceSpec({3, 2, 1}, {-1.0, 0.5, 2.0}),
        MultisliceSpec({2, 2, 2}, {-1.0, 0.0, 2.0}),
        MultisliceSpec({3, 3, 2}, {0.0, 1.0, 2.0}),
        MultisliceSpec({1, 1, 1, 1, 1, 1}, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}),
    };
}

namespace {

class Aggregator {
public:
    void add(const CheckReport& r) {
        const auto it = index_.find(key(r));
        if (it == index_.end()) {
            index_.emplace(key(r), reports_.size());
            reports_.push_back(r);
            return;
        }
        auto& cur = reports_[it->second];
        const bool pass = cur.pass && r.pass;
        if (r.slack < cur.slack) cur = r;
        cur.pass = pass;
    }
    std::vector<CheckReport> take() { return std::move(reports_); }

private:
    static std::string key(const CheckReport& r) { return r.check + "|" + r.spec; }
    std::map<std::string, std::size_t> index_;
    std::vector<CheckReport> reports_;
};

Table random_table(std::size_t size, RandomStream& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Table t(size);
    for (auto& v : t) v = scale * u(rng);
    return t;
}

MultilinearPolynomial random_polynomial(std::size_t n, RandomStream& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t degree = std::min<std::size_t>(n, 1 + rng() % 3);
    MultilinearPolynomial poly(n, u(rng));
    const std::size_t terms = 1 + rng() % 6;
    std::vector<std::size_t> idx(n);
    for (std::size_t t = 0; t < terms; ++t) {
        const std::size_t k = 1 + rng() % degree;
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        poly.add_term(std::vector<std::size_t>(idx.begin(), idx.begin() + static_cast<long>(k)), u(rng));
    }
    // always reach the drawn degree
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    poly.add_term(std::vector<std::size_t>(idx.begin(), idx.begin() + static_cast<long>(degree)), u(rng));
    return poly;
}

// Convex test functions with analytic gradients.
struct ConvexFunction {
    ScalarField f;
    GradientField grad;
};

ConvexFunction random_convex(std::size_t n, std::size_t family, RandomStream& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(n);
    for (auto& v : a) v = u(rng);
    const double beta = 0.5 + 2.0 * (u(rng) + 1.0);
    switch (family % 3) {
        case 0:
            return {[a](std::span<const double> x) {
                        double s = 0.0;
                        for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * x[i];
                        return s;
                    },
                    [a](std::span<const double>) { return a; }};
        case 1:
            // (1/beta) log sum exp(beta x_i), a smoothed maximum
            return {[beta](std::span<const double> x) {
                        const double m = *std::max_element(x.begin(), x.end());
                        double s = 0.0;
                        for (const double xi : x) s += std::exp(beta * (xi - m));
                        return m + std::log(s) / beta;
                    },
                    [beta](std::span<const double> x) {
                        const double m = *std::max_element(x.begin(), x.end());
                        std::vector<double> g(x.size());
                        double s = 0.0;
                        for (std::size_t i = 0; i < x.size(); ++i) s += (g[i] = std::exp(beta * (x[i] - m)));
                        for (auto& gi : g) gi /= s;
                        return g;
                    }};
        default:
            // 0.1 |x - a|^2 / N
            return {[a, n](std::span<const double> x) {
                        double s = 0.0;
                        for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - a[i]) * (x[i] - a[i]);
                        return 0.1 * s / static_cast<double>(n);
                    },
                    [a, n](std::span<const double> x) {
                        std::vector<double> g(x.size());
                        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 0.2 * (x[i] - a[i]) / static_cast<double>(n);
                        return g;
                    }};
    }
}

void prefix_suite(const MultisliceSpec& spec, std::size_t functions, std::uint64_t seed, std::size_t spec_index,
                  Aggregator& agg) {
    const std::size_t big_n = spec.size();
    std::vector<std::size_t> sizes = {1, big_n / 2, big_n - 1};
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    for (const auto n : sizes) {
        if (n < 1 || n >= big_n) continue;
        const PrefixSpace space(spec, n);
        // symmetric functions: one value per multiset of levels
        std::map<std::vector<std::uint8_t>, std::size_t> classes;
        std::vector<std::size_t> class_of(space.size());
        for (std::size_t k = 0; k < space.size(); ++k) {
            const auto lv = space.levels(k);
            std::vector<std::uint8_t> key(lv.begin(), lv.end());
            std::sort(key.begin(), key.end());
            class_of[k] = classes.emplace(std::move(key), classes.size()).first->second;
        }
        for (std::size_t fn = 0; fn < functions; ++fn) {
            RandomStream rng(seed ^ 0x5057u, spec_index * 1'000'000 + n * 10'000 + fn);
            const Table values = random_table(classes.size(), rng);
            Table f(space.size());
            for (std::size_t k = 0; k < space.size(); ++k) f[k] = values[class_of[k]];
            agg.add(check_swor_mlsi(space, f, DifferenceOperator::H));
            agg.add(check_swor_mlsi(space, f, DifferenceOperator::HPlus));
            agg.add(check_swor_lsi(space, f));
        }
    }
}

}  // namespace

std::vector<CheckReport> run_functional_suite(const SuiteOptions& options) {
    Aggregator agg;
    for (std::size_t si = 0; si < options.specs.size(); ++si) {
        const auto& spec = options.specs[si];
        const StateSpace space(spec);
        const double sigma_sq = lsi_constant(spec);
        double best_lsi = 0.0;
        for (std::size_t fn = 0; fn < options.functions; ++fn) {
            RandomStream rng(options.seed, si * 1'000'000 + fn);
            const Table f = random_table(space.size(), rng);
            const Table g = random_table(space.size(), rng);
            const Table ef = map_values(f, exp_value);

            const auto lsi = check_lsi(space, f);
            agg.add(lsi);
            const double energy = weighted_mean(uniform_weights(space),
                                                difference_squared(space, f, DifferenceOperator::Gamma));
            if (energy > 0.0) best_lsi = std::max(best_lsi, lsi.lhs / (2.0 * energy));
            if (lsi.pass) agg.add(check_poincare(space, f, sigma_sq));
            agg.add(check_mlsi(space, f, DifferenceOperator::Gamma, 4.0));
            agg.add(check_mlsi(space, f, DifferenceOperator::GammaPlus, 8.0));
            for (const double p : {1.25, 1.5, 2.0}) agg.add(check_beckner(space, ef, p));
            for (const double p : {2.0, 3.0, 4.0}) agg.add(check_moment_estimate(space, f, p));
            agg.add(check_local_variance_identity(space, f));
            if (options.projection_checks && spec.size() <= 8) {
                agg.add(check_projection_identities(space, f, g));
            }
        }
        agg.add(make_report("lsi_best_constant", spec.describe(), best_lsi, sigma_sq, kCheckTolerance,
                            "empirical max of Ent(f^2) / (2 E Gamma(f)^2)"));
        for (std::size_t k = 0; k < options.polynomials; ++k) {
            RandomStream rng(options.seed ^ 0x9E37u, si * 1'000'000 + k);
            agg.add(check_gradient_estimate(space, random_polynomial(spec.size(), rng)));
        }
        for (std::size_t k = 0; k < 12; ++k) {
            RandomStream rng(options.seed ^ 0xC0u, si * 1'000'000 + k);
            const auto cf = random_convex(spec.size(), k, rng);
            agg.add(check_convex_mlsi(space, cf.f, cf.grad));
        }
        if (options.prefix_checks) prefix_suite(spec, options.functions, options.seed, si, agg);
    }
    return agg.take();
}

}  // namespace mslice
