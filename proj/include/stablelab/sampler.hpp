#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "stablelab/common.hpp"
#include "stablelab/geometry.hpp"
#include "stablelab/kernels.hpp"
#include "stablelab/mc.hpp"
#include "stablelab/rng.hpp"

namespace stablelab {

struct WalkStep {
    BallSpec ball;
    Vec landing;
};

// One walk-on-balls path. For unconditioned walks every landing except the
// last is inside D, exit_point is outside D, and expected_time accumulates
// E[tau] of each ball. Conditioned chains never leave D; their exit_point is
// the final interior position at lifetime exhaustion.
struct WalkTrace {
    std::vector<WalkStep> steps;
    Vec exit_point;
    double expected_time = 0.0;
    double weight = 1.0;
    bool step_cap_hit = false;
};

struct WalkCaps {
    long max_steps = 100000;
    double eps_life_rel = 1e-4;  // conditioned-chain stop: delta < eps * diam
};

// Exact draw from the ball exit law started at x. Radial inverse-CDF when x
// is the center (regularized incomplete beta, bracketed root-finding),
// rejection against the centered envelope otherwise.
Vec sample_ball_exit(Rng& rng, const StableParams& p, const BallSpec& b, Vec x);

// Iterates exact exits of B(current, lambda * delta_D(current)) until the
// landing leaves D. The exit point is an exact harmonic-measure draw.
WalkTrace walk_on_balls(Rng& rng, const StableParams& p, const Domain& d, Vec x,
                        double lambda, const WalkCaps& caps = {});

struct HarmonicMeasureResult {
    MCEstimate est;
    double capped_fraction = 0.0;
};

// Mean of f over exit points of N independent walks. Walk i uses RNG stream
// base.stream + i; threading never changes the result.
HarmonicMeasureResult harmonic_measure_estimate(
    RngState base, const StableParams& p, const Domain& d, Vec x,
    const std::function<double(Vec)>& f, long N, double lambda = 0.5,
    int threads = 1, const WalkCaps& caps = {});

// Occupation estimator of G_D(x,y): (1/N) sum over walks and steps of
// ball_green(ball_k, center_k, y) for the steps whose ball contains y.
MCEstimate green_estimate(RngState base, const StableParams& p, const Domain& d,
                          Vec x, Vec y, long N, double lambda = 0.5,
                          int threads = 1, const WalkCaps& caps = {});

struct MartinPoint {
    Vec y;
    double ratio;
    double se;
};

// Green-ratio estimates G_D(x, y_j) / G_D(x0, y_j) along the corkscrew
// sequence y_j -> z. Walks start at y_j; G_D(y_j, .) is estimated as
// free_green(y_j, .) minus the sampled mean of free_green(exit, .), and the
// two Green values share each walk, so x == x0 gives ratio 1 exactly.
std::vector<MartinPoint> martin_estimate(RngState base, const StableParams& p,
                                         const Domain& d, Vec x, Vec x0, Vec z,
                                         int depth, long N, double lambda = 0.5,
                                         int threads = 1, const WalkCaps& caps = {});

struct HittingResult {
    MCEstimate raw;        // skeleton lower bound
    MCEstimate corrected;  // adds the jump-origin first-order correction
};

// P_{x0}(T_{B(y, lambda delta(y))} < tau_D). The raw estimate counts walks
// with a landing inside the target; the corrected one also scores, for steps
// whose ball overlaps the target, the probability that the observed jump
// originated inside it.
HittingResult hitting_prob_estimate(RngState base, const StableParams& p,
                                    const Domain& d, Vec x0, Vec y, double lambda,
                                    long N, double walk_lambda = 0.5,
                                    int threads = 1, const WalkCaps& caps = {});

// Positive singular harmonic function on a ball domain, given as evaluator
// plus the data the rejection envelope needs: a bound on the density of its
// boundary measure against normalized surface measure, and its atoms.
struct ConditionedTarget {
    std::function<double(Vec)> h;  // positive in D, zero outside
    double density_sup = 0.0;
    std::vector<std::pair<Vec, double>> atoms;  // (boundary point, mass > 0)
};

// Exact h-tilted ball walk: the next landing has density proportional to
// ball_exit_density(B, w, y) h(y) 1_D(y). Sampling is exact rejection from a
// three-part envelope (bulk exit law, boundary collar, atom cones); weight
// stays 1. Ball domains only.
WalkTrace sample_conditioned_chain(Rng& rng, const StableParams& p,
                                   const Domain& d, const ConditionedTarget& tgt,
                                   Vec x, double lambda = 0.5,
                                   const WalkCaps& caps = {});

// Envelope-mass times acceptance frequency over `trials` proposals from w;
// estimates the one-step normalizer, which equals h(w) by harmonicity.
MCEstimate conditioned_normalizer_probe(Rng& rng, const StableParams& p,
                                        const Domain& d, const ConditionedTarget& tgt,
                                        Vec w, double lambda, long trials);

// E^z_x[tau_D] on a ball domain: walk-occupation estimate of
// Int G_D(x,u) M_D(u,z) du / M_D(x,z), with the per-ball integral done by a
// fixed product rule.
MCEstimate conditioned_lifetime_estimate(RngState base, const StableParams& p,
                                         const Domain& d, Vec z, Vec x, long N,
                                         double lambda = 0.5, int threads = 1,
                                         const WalkCaps& caps = {});

}  // namespace stablelab
