#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "locind/cfmp.hpp"

namespace locind::cfmp {

namespace {

// Poisson mean per uniformization step; exp(-32) is still far from underflow.
constexpr double kMaxPoissonMean = 32.0;

void require_distribution(const Process& p, const Eigen::VectorXd& pi) {
    if (static_cast<std::size_t>(pi.size()) != p.state_count()) {
        throw std::invalid_argument("initial distribution has " + std::to_string(pi.size()) + " entries, expected " +
                                    std::to_string(p.state_count()));
    }
    for (Eigen::Index i = 0; i < pi.size(); ++i) {
        if (!std::isfinite(pi[i]) || pi[i] < 0.0) {
            throw std::invalid_argument("initial distribution has negative or non-finite mass");
        }
    }
    if (std::abs(pi.sum() - 1.0) > 1e-12) throw std::invalid_argument("initial distribution does not sum to 1");
}

// Uniform on (0, 1], from the top 53 bits.
double unit_open(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

Eigen::MatrixXd transition_matrix(const Generator& q, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("transition_matrix needs h > 0");
    const Eigen::Index n = q.matrix.rows();
    double lambda = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) lambda = std::max(lambda, std::abs(q.matrix.coeff(i, i)));
    if (lambda == 0.0) return Eigen::MatrixXd::Identity(n, n);

    // exp(Qh) = (exp(Q h / 2^s))^(2^s) keeps each Poisson mean small.
    int squarings = 0;
    while (lambda * h / std::ldexp(1.0, squarings) > kMaxPoissonMean) ++squarings;
    const double mean = lambda * h / std::ldexp(1.0, squarings);

    Eigen::SparseMatrix<double, Eigen::RowMajor> kernel = q.matrix / lambda;
    for (Eigen::Index i = 0; i < n; ++i) kernel.coeffRef(i, i) += 1.0;

    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    double weight = std::exp(-mean);
    double mass = weight;
    Eigen::MatrixXd sum = weight * power;
    for (int k = 1; 1.0 - mass > kPoissonTailMass || k <= mean; ++k) {
        power = power * kernel;
        weight *= mean / k;
        mass += weight;
        sum += weight * power;
        if (weight == 0.0 && k > mean) break;
    }
    // Rows of every kernel power sum to 1, so this spreads the truncated tail.
    sum /= mass;

    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double& v = sum(i, j);
            if (v < 0.0 && v > -kPoissonTailMass) v = 0.0;
        }
    }
    return sum;
}

Eigen::VectorXd uniform_distribution(const Process& p) {
    const auto n = static_cast<Eigen::Index>(p.state_count());
    return Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
}

std::string_view name_of(DecayClass c) {
    switch (c) {
        case DecayClass::Zero: return "zero";
        case DecayClass::Fast: return "fast";
        case DecayClass::Slow: return "slow";
    }
    return "unknown";
}

DecayClass classify_decay(const std::vector<double>& cmi, const std::vector<double>& exponents) {
    if (std::all_of(cmi.begin(), cmi.end(), [](double v) { return v < kZeroCmi; })) return DecayClass::Zero;
    if (exponents.empty()) throw std::invalid_argument("decay classification needs at least two step sizes");
    const double e = exponents.back();
    return (std::isnan(e) || e >= kFastExponent) ? DecayClass::Fast : DecayClass::Slow;
}

CiDecayReport ci_decay(const Process& p, const Eigen::VectorXd& pi, NodeSet targets, NodeSet sources, NodeSet cond,
                       const std::vector<double>& hs) {
    require_distribution(p, pi);
    const NodeSet all = p.universe().all();
    if (!(targets | sources | cond).subset_of(all)) throw QueryError("ci_decay: unknown component");
    if (targets.empty() || sources.empty()) throw QueryError("ci_decay: targets and sources must be nonempty");
    if (sources.intersects(targets | cond)) {
        throw QueryError("ci_decay: sources must be disjoint from targets and the conditioning set");
    }
    if (hs.size() < 2) throw std::invalid_argument("ci_decay: at least two step sizes required");
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(hs[i] >= kMinStep)) throw std::invalid_argument("ci_decay: step sizes must be >= 1e-4");
        if (i > 0 && !(hs[i] < hs[i - 1])) throw std::invalid_argument("ci_decay: step sizes must strictly decrease");
    }

    const NodeSet given = cond | targets;
    const std::size_t nz = p.configurations(given);
    const std::size_t nx = p.configurations(sources);
    const std::size_t nw = p.configurations(targets);
    const std::size_t n = p.state_count();

    std::vector<std::size_t> zi(n), xi(n), wi(n);
    for (std::size_t y = 0; y < n; ++y) {
        zi[y] = p.project(y, given);
        xi[y] = p.project(y, sources);
        wi[y] = p.project(y, targets);
    }

    const Generator q = build_generator(p);
    CiDecayReport report{targets, sources, cond, hs, {}, {}, {}, DecayClass::Zero};
    for (double h : hs) {
        const Eigen::MatrixXd pm = transition_matrix(q, h);
        std::vector<double> joint(nz * nx * nw, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (pi[static_cast<Eigen::Index>(i)] == 0.0) continue;
            const double mass = pi[static_cast<Eigen::Index>(i)];
            double* cell = &joint[(zi[i] * nx + xi[i]) * nw];
            for (std::size_t j = 0; j < n; ++j) {
                cell[wi[j]] += mass * pm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        std::vector<double> pz(nz, 0.0), pzx(nz * nx, 0.0), pzw(nz * nw, 0.0);
        for (std::size_t z = 0; z < nz; ++z) {
            for (std::size_t x = 0; x < nx; ++x) {
                for (std::size_t w = 0; w < nw; ++w) {
                    const double v = joint[(z * nx + x) * nw + w];
                    pz[z] += v;
                    pzx[z * nx + x] += v;
                    pzw[z * nw + w] += v;
                }
            }
        }
        double info = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
            for (std::size_t x = 0; x < nx; ++x) {
                for (std::size_t w = 0; w < nw; ++w) {
                    const double v = joint[(z * nx + x) * nw + w];
                    if (v < 1e-15) continue;
                    info += v * std::log(v * pz[z] / (pzx[z * nx + x] * pzw[z * nw + w]));
                }
            }
        }
        report.cmi.push_back(std::max(info, 0.0));
    }

    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        const double now = report.cmi[i], next = report.cmi[i + 1];
        const double nan = std::numeric_limits<double>::quiet_NaN();
        report.ratios.push_back(now > 0.0 ? next / now : nan);
        if (now > 0.0 && next > 0.0) {
            report.exponents.push_back(std::log(now / next) / std::log(hs[i] / hs[i + 1]));
        } else if (now > 0.0) {
            report.exponents.push_back(std::numeric_limits<double>::infinity());
        } else {
            report.exponents.push_back(nan);
        }
    }
    report.decay = classify_decay(report.cmi, report.exponents);
    return report;
}

Trajectory simulate(const Process& p, const Eigen::VectorXd& pi, double horizon, std::uint64_t seed) {
    require_distribution(p, pi);
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("simulate needs horizon > 0");

    std::mt19937_64 rng(seed);
    std::size_t state = 0;
    {
        double u = unit_open(rng) * pi.sum();
        for (std::size_t i = 0; i < p.state_count(); ++i) {
            const double m = pi[static_cast<Eigen::Index>(i)];
            if (m <= 0.0) continue;
            state = i;
            u -= m;
            if (u <= 0.0) break;
        }
    }

    Trajectory t{p.decode(state), {}, horizon};
    double now = 0.0;
    while (true) {
        double exit = 0.0;
        for (std::size_t k = 0; k < p.component_count(); ++k) {
            for (std::size_t to = 0; to < p.cardinality(k); ++to) exit += p.rate(k, state, to);
        }
        if (exit <= 0.0) break;
        now += -std::log(unit_open(rng)) / exit;
        if (now > horizon) break;

        double u = unit_open(rng) * exit;
        std::size_t pick_k = 0, pick_to = 0;
        bool picked = false;
        for (std::size_t k = 0; k < p.component_count() && !picked; ++k) {
            for (std::size_t to = 0; to < p.cardinality(k); ++to) {
                const double r = p.rate(k, state, to);
                if (r <= 0.0) continue;
                pick_k = k;
                pick_to = to;
                u -= r;
                if (u <= 0.0) {
                    picked = true;
                    break;
                }
            }
        }
        state = p.with_component(state, pick_k, pick_to);
        t.jumps.push_back(Jump{now, pick_k, pick_to});
    }
    return t;
}

void check_trajectory(const Process& p, const Trajectory& t) {
    if (!(t.horizon >= 0.0) || !std::isfinite(t.horizon)) throw std::invalid_argument("trajectory horizon invalid");
    std::vector<std::size_t> state = t.initial;
    p.encode(state);
    double last = 0.0;
    for (std::size_t i = 0; i < t.jumps.size(); ++i) {
        const Jump& j = t.jumps[i];
        if (!(j.time > last || (i == 0 && j.time >= 0.0)) || j.time > t.horizon) {
            throw std::invalid_argument("trajectory jump times must increase strictly within [0, horizon]");
        }
        if (j.component >= p.component_count() || j.state >= p.cardinality(j.component)) {
            throw std::invalid_argument("trajectory jump names an unknown component or state");
        }
        if (state[j.component] == j.state) {
            throw std::invalid_argument("trajectory jump at time " + std::to_string(j.time) + " does not change state");
        }
        state[j.component] = j.state;
        last = j.time;
    }
}

std::vector<ComponentEstimate> estimate_intensities(const Process& p, const std::vector<Trajectory>& trajs) {
    const std::size_t kc = p.component_count();
    std::vector<std::vector<std::size_t>> counts(kc);
    std::vector<std::vector<double>> exposure(kc);
    for (std::size_t k = 0; k < kc; ++k) {
        const std::size_t cfgs = p.configurations(p.declared_parents(k));
        const std::size_t c = p.cardinality(k);
        counts[k].assign(cfgs * c * c, 0);
        exposure[k].assign(cfgs * c, 0.0);
    }

    auto expose = [&](std::size_t state, double dt) {
        for (std::size_t k = 0; k < kc; ++k) {
            const std::size_t cfg = p.project(state, p.declared_parents(k));
            exposure[k][cfg * p.cardinality(k) + p.component_state(state, k)] += dt;
        }
    };

    for (const auto& t : trajs) {
        check_trajectory(p, t);
        std::size_t state = p.encode(t.initial);
        double now = 0.0;
        for (const auto& j : t.jumps) {
            expose(state, j.time - now);
            const std::size_t k = j.component;
            const std::size_t c = p.cardinality(k);
            const std::size_t cfg = p.project(state, p.declared_parents(k));
            ++counts[k][(cfg * c + p.component_state(state, k)) * c + j.state];
            state = p.with_component(state, k, j.state);
            now = j.time;
        }
        expose(state, t.horizon - now);
    }

    std::vector<ComponentEstimate> out;
    for (std::size_t k = 0; k < kc; ++k) {
        ComponentEstimate est{k, p.declared_parents(k), {}};
        const std::size_t c = p.cardinality(k);
        for (std::size_t cfg = 0; cfg < p.configurations(est.parents); ++cfg) {
            std::vector<std::size_t> given;
            std::size_t rest = cfg;
            for (auto j : est.parents) {
                given.push_back(rest % p.cardinality(j));
                rest /= p.cardinality(j);
            }
            for (std::size_t from = 0; from < c; ++from) {
                const double exp_time = exposure[k][cfg * c + from];
                for (std::size_t to = 0; to < c; ++to) {
                    if (to == from) continue;
                    EstimatedCell cell{given, from, to, counts[k][(cfg * c + from) * c + to], exp_time, std::nullopt};
                    if (exp_time > 0.0) cell.rate = static_cast<double>(cell.count) / exp_time;
                    est.cells.push_back(std::move(cell));
                }
            }
        }
        out.push_back(std::move(est));
    }
    return out;
}

}  // namespace locind::cfmp
