#include "stablelab/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace stablelab {

namespace {

// Radius of the exit position from the center of a unit ball: the CDF of
// |y| = t > 1 is I_{1 - t^{-2}}(1 - alpha/2, alpha/2).
double sample_exit_radius(Rng& rng, const StableParams& p) {
    double u = rng.uniform();
    double q = reg_inc_beta_inv(1.0 - 0.5 * p.alpha, 0.5 * p.alpha, u);
    q = std::min(q, 1.0 - 1e-16);
    double t = 1.0 / std::sqrt(1.0 - q);
    return std::max(t, 1.0 + 1e-15);
}

}  // namespace

Vec sample_ball_exit(Rng& rng, const StableParams& p, const BallSpec& b, Vec x) {
    double d = dist(x, b.center);
    if (d >= b.radius) throw BadGeometry("sample_ball_exit: x not inside ball");
    double r = b.radius;
    if (d <= 1e-14 * r) {
        double t = sample_exit_radius(rng, p);
        return b.center + (t * r) * rng.direction(p.n);
    }
    // Rejection from the centered exit law. The density ratio target/envelope
    // is bounded by M = [(r^2-d^2)/r^2]^{a/2} (r/(r-d))^n.
    double M = std::pow((r * r - d * d) / (r * r), 0.5 * p.alpha) *
               std::pow(r / (r - d), static_cast<double>(p.n));
    for (long k = 0; k < 1000000; ++k) {
        double t = sample_exit_radius(rng, p);
        Vec y = b.center + (t * r) * rng.direction(p.n);
        double ratio = ball_exit_density(p, b, x, y) /
                       (M * ball_exit_density(p, b, b.center, y));
        if (ratio > 1.0 + 1e-9)
            throw EnvelopeViolation("sample_ball_exit: envelope bound exceeded");
        if (rng.uniform() < ratio) return y;
    }
    throw RejectionOverflow("sample_ball_exit: rejection failed 1e6 times");
}

WalkTrace walk_on_balls(Rng& rng, const StableParams& p, const Domain& d, Vec x,
                        double lambda, const WalkCaps& caps) {
    if (!(lambda > 0.0) || lambda > 1.0)
        throw BadGeometry("walk_on_balls: lambda must be in (0,1]");
    if (!d.contains(x)) throw BadGeometry("walk_on_balls: start not inside domain");
    double unit_time = unit_ball_center_exit_time(p);
    WalkTrace tr;
    Vec cur = x;
    for (;;) {
        if (static_cast<long>(tr.steps.size()) >= caps.max_steps) {
            tr.step_cap_hit = true;
            tr.exit_point = cur;
            return tr;
        }
        double delta = d.dist_to_complement(cur);
        BallSpec ball(cur, lambda * delta);
        Vec y = sample_ball_exit(rng, p, ball, cur);
        tr.steps.push_back({ball, y});
        tr.expected_time += unit_time * std::pow(ball.radius, p.alpha);
        if (!d.contains(y)) {
            tr.exit_point = y;
            return tr;
        }
        cur = y;
    }
}

HarmonicMeasureResult harmonic_measure_estimate(
    RngState base, const StableParams& p, const Domain& d, Vec x,
    const std::function<double(Vec)>& f, long N, double lambda, int threads,
    const WalkCaps& caps) {
    struct Acc {
        MeanAcc val;
        long capped = 0;
        void merge(const Acc& o) {
            val.merge(o.val);
            capped += o.capped;
        }
    };
    Acc acc = parallel_accumulate<Acc>(N, threads, [&](long i, Acc& a) {
        Rng rng(RngState{base.seed, base.stream + static_cast<std::uint64_t>(i)});
        WalkTrace tr = walk_on_balls(rng, p, d, x, lambda, caps);
        if (tr.step_cap_hit) {
            ++a.capped;
            return;
        }
        a.val.add(f(tr.exit_point));
    });
    HarmonicMeasureResult out;
    out.est = acc.val.estimate();
    out.capped_fraction = static_cast<double>(acc.capped) / static_cast<double>(N);
    return out;
}

MCEstimate green_estimate(RngState base, const StableParams& p, const Domain& d,
                          Vec x, Vec y, long N, double lambda, int threads,
                          const WalkCaps& caps) {
    if (dist(x, y) < 1e-9 * d.diameter())
        throw SingularPoint("green_estimate: x too close to y");
    MeanAcc acc = parallel_accumulate<MeanAcc>(N, threads, [&](long i, MeanAcc& a) {
        Rng rng(RngState{base.seed, base.stream + static_cast<std::uint64_t>(i)});
        WalkTrace tr = walk_on_balls(rng, p, d, x, lambda, caps);
        double sum = 0.0;
        for (auto& st : tr.steps) {
            if (dist(y, st.ball.center) < st.ball.radius)
                sum += ball_green(p, st.ball, st.ball.center, y);
        }
        a.add(sum);
    });
    return acc.estimate();
}

std::vector<MartinPoint> martin_estimate(RngState base, const StableParams& p,
                                         const Domain& d, Vec x, Vec x0, Vec z,
                                         int depth, long N, double lambda,
                                         int threads, const WalkCaps& caps) {
    std::vector<MartinPoint> out;
    std::vector<Vec> ys = d.corkscrew_sequence(z, depth);
    for (int j = 0; j < depth; ++j) {
        Vec yj = ys[j];
        double gx = free_green(p, yj, x);
        double gx0 = free_green(p, yj, x0);
        RngState lvl{base.seed,
                     base.stream + static_cast<std::uint64_t>(j) *
                                       static_cast<std::uint64_t>(N)};
        RatioAcc acc =
            parallel_accumulate<RatioAcc>(N, threads, [&](long i, RatioAcc& a) {
                Rng rng(RngState{lvl.seed, lvl.stream + static_cast<std::uint64_t>(i)});
                WalkTrace tr = walk_on_balls(rng, p, d, yj, lambda, caps);
                Vec e = tr.exit_point;
                a.add(gx - free_green(p, e, x), gx0 - free_green(p, e, x0));
            });
        MCEstimate r = acc.ratio();
        out.push_back({yj, r.mean, r.se});
    }
    return out;
}

namespace {

// P(the observed jump from ball B started at its center originated inside
// the target ball T), via Int_{T cap B} G_B(c,u) J(u, landing) du over the
// Ikeda-Watanabe factorization of the exit density.
double jump_origin_probability(const StableParams& p, const BallSpec& b,
                               const BallSpec& target, Vec landing) {
    auto& gl_r = gauss_legendre_01(16);
    auto& gl_a = gauss_legendre_01(16);
    double total = 0.0;
    // polar grid over the target ball
    for (auto& [tr_, wr] : gl_r) {
        double s = target.radius * tr_;
        double ring = 0.0;
        for (auto& [ta, wa] : gl_a) {
            double phi = 2.0 * M_PI * ta;
            Vec u = target.center + s * Vec{std::cos(phi), std::sin(phi), 0.0};
            if (dist(u, b.center) >= b.radius) continue;
            double g = dist(u, b.center) < 1e-12 * b.radius
                           ? 0.0
                           : ball_green(p, b, b.center, u);
            ring += wa * g * jump_kernel_density(p, u, landing);
        }
        total += wr * ring * 2.0 * M_PI * s * target.radius;
    }
    double denom = ball_exit_density(p, b, b.center, landing);
    return std::min(1.0, total / denom);
}

}  // namespace

HittingResult hitting_prob_estimate(RngState base, const StableParams& p,
                                    const Domain& d, Vec x0, Vec y, double lambda,
                                    long N, double walk_lambda, int threads,
                                    const WalkCaps& caps) {
    double dy = d.dist_to_complement(y);
    if (!(dy > 0.0)) throw BadGeometry("hitting_prob_estimate: y not inside domain");
    if (!(dist(y, x0) > 2.0 * dy))
        throw BadGeometry("hitting_prob_estimate: need |y - x0| > 2 delta(y)");
    BallSpec target(y, lambda * dy);
    struct Acc {
        MeanAcc raw, corr;
        void merge(const Acc& o) {
            raw.merge(o.raw);
            corr.merge(o.corr);
        }
    };
    Acc acc = parallel_accumulate<Acc>(N, threads, [&](long i, Acc& a) {
        Rng rng(RngState{base.seed, base.stream + static_cast<std::uint64_t>(i)});
        WalkTrace tr = walk_on_balls(rng, p, d, x0, walk_lambda, caps);
        bool hit = false;
        double miss_prob = 1.0;
        for (auto& st : tr.steps) {
            if (dist(st.landing, target.center) < target.radius) {
                hit = true;
                break;
            }
            if (p.n == 2 &&
                dist(st.ball.center, target.center) < st.ball.radius + target.radius)
                miss_prob *=
                    1.0 - jump_origin_probability(p, st.ball, target, st.landing);
        }
        a.raw.add(hit ? 1.0 : 0.0);
        a.corr.add(hit ? 1.0 : 1.0 - miss_prob);
    });
    return {acc.raw.estimate(), acc.corr.estimate()};
}

namespace {

// Rejection envelope for one h-tilted step from w inside the unit ball.
// Pieces: (1) bulk = centered exit law times a bound on h away from the
// boundary collar and atom cones, (2) boundary collar with radial density
// (1-rho)^{alpha/2-1}, (3) one cone s^{alpha/2-1} around each atom. All in
// unit-ball coordinates.
struct StepEnvelope {
    const StableParams* p;
    BallSpec ball{{0, 0, 0}, 1.0};
    Vec w;
    double t0 = 0.0;     // collar depth, 0 if no density part
    double c_bulk = 0.0; // bound on h outside collar and atom cones
    double p_col = 0.0;  // sup of centered exit density over the collar
    double u_sup = 0.0;
    std::vector<double> rho_a, p_a;  // per-atom cone radius, density sup
    const std::vector<std::pair<Vec, double>>* atoms = nullptr;
    double mass_bulk = 0.0, mass_col = 0.0;
    std::vector<double> mass_atom;
    double total_mass = 0.0;

    // centered exit density at distance t > r from the ball center
    double centered(double t) const {
        double r = ball.radius;
        return poisson_ball_constant(*p) *
               std::pow(r * r / (t * t - r * r), 0.5 * p->alpha) *
               std::pow(t, -static_cast<double>(p->n));
    }

    void build(const StableParams& params, Vec w_, double lambda,
               const ConditionedTarget& tgt) {
        p = &params;
        w = w_;
        double delta = 1.0 - norm(w);
        double r = lambda * delta;
        ball = BallSpec(w, r);
        u_sup = tgt.density_sup;
        atoms = &tgt.atoms;
        double a = params.alpha;
        double area = sphere_area(params.n);

        t0 = u_sup > 0.0 ? 0.5 * (1.0 - lambda) * delta : 0.0;
        t0 = std::min(t0, 0.25);
        c_bulk = u_sup > 0.0 ? u_sup * std::pow(t0, 0.5 * a - 1.0) : 0.0;
        if (u_sup > 0.0) {
            double dmin = (1.0 - t0) - norm(w);
            p_col = centered(dmin);
            mass_col = p_col * u_sup * area * (2.0 / a) * std::pow(t0, 0.5 * a);
        }
        for (auto& [za, ma] : tgt.atoms) {
            double dz = dist(za, w);
            double rho = 0.5 * (dz - r);
            if (t0 > 0.0) rho = std::min(rho, t0);
            rho = std::min(rho, 0.25);
            double pa = centered(dz - rho);
            rho_a.push_back(rho);
            p_a.push_back(pa);
            c_bulk += ma * std::pow(2.0, 0.5 * a) * std::pow(rho, 0.5 * a - p.n * 0.0 - p->n);
            mass_atom.push_back(pa * ma * std::pow(2.0, 0.5 * a) * area *
                                (2.0 / a) * std::pow(rho, 0.5 * a));
        }
        mass_bulk = c_bulk;
        total_mass = mass_bulk + mass_col;
        for (double m : mass_atom) total_mass += m;
    }

    // envelope density at y (y strictly outside the closed proposal ball)
    double value(Vec y) const {
        double a = p->alpha;
        double g = c_bulk * density_at(y);
        double ny = norm(y);
        if (u_sup > 0.0 && 1.0 - ny < t0 && ny < 1.0)
            g += p_col * u_sup * std::pow(1.0 - ny, 0.5 * a - 1.0) *
                 std::pow(ny, 1.0 - p->n);
        for (size_t i = 0; i < rho_a.size(); ++i) {
            double s = dist(y, (*atoms)[i].first);
            if (s < rho_a[i])
                g += p_a[i] * (*atoms)[i].second * std::pow(2.0, 0.5 * a) *
                     std::pow(s, 0.5 * a - p->n);
        }
        return g;
    }

    double density_at(Vec y) const {
        return ball_exit_density(*p, ball, w, y);
    }

    Vec sample(Rng& rng, int* which = nullptr) const {
        double u = rng.uniform() * total_mass;
        if (u < mass_bulk) {
            if (which) *which = 0;
            double t = sample_unit_exit_radius(rng);
            return w + (t * ball.radius) * rng.direction(p->n);
        }
        u -= mass_bulk;
        if (u < mass_col) {
            if (which) *which = 1;
            double s = t0 * std::pow(rng.uniform(), 2.0 / p->alpha);
            return (1.0 - s) * rng.direction(p->n);
        }
        u -= mass_col;
        for (size_t i = 0; i < mass_atom.size(); ++i) {
            if (u < mass_atom[i]) {
                if (which) *which = 2 + static_cast<int>(i);
                double s = rho_a[i] * std::pow(rng.uniform(), 2.0 / p->alpha);
                return (*atoms)[i].first + s * rng.direction(p->n);
            }
            u -= mass_atom[i];
        }
        // numerical spill; treat as bulk
        if (which) *which = 0;
        double t = sample_unit_exit_radius(rng);
        return w + (t * ball.radius) * rng.direction(p->n);
    }

    double sample_unit_exit_radius(Rng& rng) const {
        double u = rng.uniform();
        double q = reg_inc_beta_inv(1.0 - 0.5 * p->alpha, 0.5 * p->alpha, u);
        q = std::min(q, 1.0 - 1e-16);
        return std::max(1.0 / std::sqrt(1.0 - q), 1.0 + 1e-15);
    }
};

}  // namespace

WalkTrace sample_conditioned_chain(Rng& rng, const StableParams& p,
                                   const Domain& d, const ConditionedTarget& tgt,
                                   Vec x, double lambda, const WalkCaps& caps) {
    if (d.shape() != Domain::Shape::Ball)
        throw BadGeometry("sample_conditioned_chain: ball domains only");
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw BadGeometry("sample_conditioned_chain: lambda must be in (0,1)");
    if (!d.contains(x)) throw BadGeometry("sample_conditioned_chain: start outside");
    Vec C = d.ball_center();
    double R = d.ball_radius();
    auto to_unit = [&](Vec v) { return (1.0 / R) * (v - C); };
    auto to_abs = [&](Vec v) { return C + R * v; };

    ConditionedTarget unit_tgt;
    unit_tgt.density_sup = tgt.density_sup;
    for (auto& [za, ma] : tgt.atoms) unit_tgt.atoms.push_back({to_unit(za), ma});
    auto h_abs = tgt.h;
    auto h_unit = [&](Vec yu) { return h_abs(to_abs(yu)); };

    double eps = caps.eps_life_rel * d.diameter();
    if (h_unit(to_unit(x)) <= 0.0)
        throw BadGeometry("sample_conditioned_chain: h(x) <= 0");

    WalkTrace tr;
    Vec cur = to_unit(x);
    for (;;) {
        if (static_cast<long>(tr.steps.size()) >= caps.max_steps) {
            tr.step_cap_hit = true;
            break;
        }
        if (R * (1.0 - norm(cur)) < eps) break;
        StepEnvelope env;
        env.build(p, cur, lambda, unit_tgt);
        Vec y;
        bool accepted = false;
        for (long k = 0; k < 1000000; ++k) {
            Vec cand = env.sample(rng);
            double f = 0.0;
            if (norm(cand) < 1.0) {
                double hv = h_unit(cand);
                if (hv > 0.0) f = env.density_at(cand) * hv;
            }
            if (f <= 0.0) continue;
            double g = env.value(cand);
            if (f > g * (1.0 + 1e-9))
                throw EnvelopeViolation("conditioned chain: target above envelope");
            if (rng.uniform() * g < f) {
                y = cand;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw RejectionOverflow("conditioned chain: rejection failed 1e6 times");
        tr.steps.push_back({BallSpec(to_abs(cur), R * env.ball.radius), to_abs(y)});
        cur = y;
    }
    tr.exit_point = to_abs(cur);
    tr.weight = 1.0;
    return tr;
}

MCEstimate conditioned_normalizer_probe(Rng& rng, const StableParams& p,
                                        const Domain& d, const ConditionedTarget& tgt,
                                        Vec w, double lambda, long trials) {
    if (d.shape() != Domain::Shape::Ball)
        throw BadGeometry("conditioned_normalizer_probe: ball domains only");
    Vec C = d.ball_center();
    double R = d.ball_radius();
    auto to_unit = [&](Vec v) { return (1.0 / R) * (v - C); };
    auto to_abs = [&](Vec v) { return C + R * v; };
    ConditionedTarget unit_tgt;
    unit_tgt.density_sup = tgt.density_sup;
    for (auto& [za, ma] : tgt.atoms) unit_tgt.atoms.push_back({to_unit(za), ma});
    StepEnvelope env;
    env.build(p, to_unit(w), lambda, unit_tgt);
    MeanAcc acc;
    for (long i = 0; i < trials; ++i) {
        Vec cand = env.sample(rng);
        double f = 0.0;
        if (norm(cand) < 1.0) {
            double hv = tgt.h(to_abs(cand));
            if (hv > 0.0) f = env.density_at(cand) * hv;
        }
        double g = env.value(cand);
        acc.add(f > 0.0 ? env.total_mass * std::min(1.0, f / g) : 0.0);
    }
    return acc.estimate();
}

MCEstimate conditioned_lifetime_estimate(RngState base, const StableParams& p,
                                         const Domain& d, Vec z, Vec x, long N,
                                         double lambda, int threads,
                                         const WalkCaps& caps) {
    if (d.shape() != Domain::Shape::Ball)
        throw BadGeometry("conditioned_lifetime_estimate: ball domains only");
    Vec C = d.ball_center();
    double R = d.ball_radius();
    auto to_unit = [&](Vec v) { return (1.0 / R) * (v - C); };
    Vec zu = to_unit(z);
    if (std::abs(norm(zu) - 1.0) > 1e-9)
        throw BadGeometry("conditioned_lifetime_estimate: z not on the boundary");
    double mxz = ball_martin(p, to_unit(x), zu);

    auto ball_weight = [&](const BallSpec& b) {
        // Int_B G_B(c,u) M(u,z) du with radial substitution s = r t^{1/alpha}
        Vec cu = to_unit(b.center);
        double r = b.radius / R;
        int n_ang = dist(cu, zu) < 3.0 * r ? 128 : 32;
        auto& gl = gauss_legendre_01(16);
        double a = p.alpha;
        double acc = 0.0;
        for (auto& [t, wt] : gl) {
            double s = r * std::pow(t, 1.0 / a);
            double w = (r * r - s * s) / (s * s);
            double ib = reg_inc_beta(0.5 * a, 0.5 * (p.n - a), w / (1.0 + w));
            double avg = 0.0;
            for (int k = 0; k < n_ang; ++k) {
                double phi = 2.0 * M_PI * (k + 0.5) / n_ang;
                Vec u = cu + s * Vec{std::cos(phi), std::sin(phi), 0.0};
                avg += ball_martin(p, u, zu);
            }
            avg /= n_ang;
            acc += wt * ib * avg;
        }
        // 2 pi * A(n,a) * (r^a / a) * sum, then time-rescale by R^a
        return 2.0 * M_PI * riesz_constant(p) * (std::pow(r, a) / a) * acc *
               std::pow(R, a);
    };

    MeanAcc acc = parallel_accumulate<MeanAcc>(N, threads, [&](long i, MeanAcc& a) {
        Rng rng(RngState{base.seed, base.stream + static_cast<std::uint64_t>(i)});
        WalkTrace tr = walk_on_balls(rng, p, d, x, lambda, caps);
        double sum = 0.0;
        for (auto& st : tr.steps) sum += ball_weight(st.ball);
        a.add(sum);
    });
    MCEstimate e = acc.estimate();
    e.mean /= mxz;
    e.se /= mxz;
    return e;
}

}  // namespace stablelab
