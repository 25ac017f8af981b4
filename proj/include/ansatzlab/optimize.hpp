#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include "ansatzlab/circuit.hpp"
#include "ansatzlab/observable.hpp"

namespace ansatzlab {

struct NelderMeadOptions {
    int max_evals = 10000;
    double ftol = 1e-9;      // simplex f-spread at convergence
    double init_step = 0.5;  // initial simplex edge
};

struct NelderMeadResult {
    double fmin = 0.0;
    std::vector<double> x;
    int evals = 0;
    bool converged = false;
};

/// Nelder-Mead with the dimension-adaptive coefficients (expansion 1 + 2/P,
/// contraction 0.75 - 1/(2P), shrink 1 - 1/P).
inline NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                    std::vector<double> x0, const NelderMeadOptions& opt) {
    const int P = static_cast<int>(x0.size());
    NelderMeadResult res;
    if (P == 0) {
        res.fmin = f(x0);
        res.x = std::move(x0);
        res.evals = 1;
        res.converged = true;
        return res;
    }
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / P;
    const double gamma = 0.75 - 1.0 / (2.0 * P);
    const double delta = 1.0 - 1.0 / P;

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> xs(P + 1, x0);
    std::vector<double> fs(P + 1);
    for (int i = 1; i <= P; ++i) xs[i][i - 1] += opt.init_step;
    for (int i = 0; i <= P; ++i) fs[i] = eval(xs[i]);

    std::vector<int> order(P + 1);
    while (evals < opt.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[P], second = order[P - 1];
        if (fs[worst] - fs[best] < opt.ftol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(P, 0.0);
        for (int i = 0; i <= P; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < P; ++k) centroid[k] += xs[i][k];
        }
        for (double& c : centroid) c /= P;

        auto along = [&](double t) {
            std::vector<double> x(P);
            for (int k = 0; k < P; ++k) x[k] = centroid[k] + t * (xs[worst][k] - centroid[k]);
            return x;
        };

        const auto xr = along(-alpha);
        const double fr = eval(xr);
        if (fr < fs[order[0]]) {
            const auto xe = along(-beta);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            const auto xc = along(outside ? -gamma : gamma);
            const double fc = eval(xc);
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (int i = 1; i <= P; ++i) {
                    const int idx = order[i];
                    for (int k = 0; k < P; ++k)
                        xs[idx][k] = xs[best][k] + delta * (xs[idx][k] - xs[best][k]);
                    fs[idx] = eval(xs[idx]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= P; ++i)
        if (fs[i] < fs[best]) best = i;
    res.fmin = fs[best];
    res.x = xs[best];
    res.evals = evals;
    return res;
}

struct OptimizeConfig {
    int restarts = 10;
    uint64_t seed = 0;
    int max_evals_per_restart = 0;  // 0 -> 500 * P
    double target_epsilon = -1.0;   // >= 0: stop spending restarts once reached
    int jobs = 1;
};

struct RunResult {
    double e_a = 0.0;      // optimized cost
    double e_exact = 0.0;  // exact minimum of the observable
    double epsilon = 0.0;  // |e_a - e_exact|
    long long evals = 0;
    int restarts_used = 0;
    uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<double> best_theta;
};

/// Multistart derivative-free minimization of <psi(theta)|O|psi(theta)>:
/// uniform starts in [0, 2pi)^P, one Nelder-Mead run per restart, best kept
/// (ties broken by earliest restart). Deterministic for a fixed config.
inline RunResult optimize(const Circuit& c, const Observable& obs, const OptimizeConfig& cfg) {
    if (c.n_qubits != obs.n) fail(ErrorKind::ArityMismatch, "circuit vs observable arity");
    const auto t0 = std::chrono::steady_clock::now();
    const int P = c.raw_param_count;

    RunResult rr;
    rr.seed = cfg.seed;
    rr.e_exact = exact_minimum(obs).energy;

    auto cost = [&](std::span<const double> theta) {
        Statevector s = run_circuit(c, theta);
        return expectation(s, obs);
    };

    NelderMeadOptions nm;
    nm.max_evals = cfg.max_evals_per_restart > 0 ? cfg.max_evals_per_restart : 500 * std::max(P, 1);

    auto run_one = [&](int restart) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * (restart + 1));
        std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
        std::vector<double> x0(P);
        for (double& x : x0) x = uni(rng);
        return nelder_mead(cost, std::move(x0), nm);
    };

    bool have_best = false;
    NelderMeadResult best;
    const int jobs = std::max(1, cfg.jobs);
    for (int base = 0; base < cfg.restarts && rr.restarts_used < cfg.restarts;) {
        const int batch = std::min(jobs, cfg.restarts - base);
        std::vector<NelderMeadResult> results(batch);
        if (batch == 1) {
            results[0] = run_one(base);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(batch);
            for (int k = 0; k < batch; ++k)
                threads.emplace_back([&, k]() { results[k] = run_one(base + k); });
            for (auto& t : threads) t.join();
        }
        for (int k = 0; k < batch; ++k) {
            ++rr.restarts_used;
            rr.evals += results[k].evals;
            if (!have_best || results[k].fmin < best.fmin) {
                best = std::move(results[k]);
                have_best = true;
            }
            if (cfg.target_epsilon >= 0.0 && have_best &&
                std::abs(best.fmin - rr.e_exact) < cfg.target_epsilon)
                break;
        }
        base += batch;
        if (cfg.target_epsilon >= 0.0 && have_best &&
            std::abs(best.fmin - rr.e_exact) < cfg.target_epsilon)
            break;
    }

    rr.e_a = have_best ? best.fmin : 0.0;
    rr.best_theta = have_best ? best.x : std::vector<double>(P, 0.0);
    rr.epsilon = std::abs(rr.e_a - rr.e_exact);
    rr.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rr;
}

}  // namespace ansatzlab
