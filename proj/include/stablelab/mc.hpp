#pragma once

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace stablelab {

struct MCEstimate {
    double mean = 0.0;
    double se = 0.0;
    long n = 0;
};

// Scalar mean/variance accumulator with deterministic merge.
struct MeanAcc {
    double sum = 0.0, sum2 = 0.0;
    long n = 0;
    void add(double v) {
        sum += v;
        sum2 += v * v;
        ++n;
    }
    void merge(const MeanAcc& o) {
        sum += o.sum;
        sum2 += o.sum2;
        n += o.n;
    }
    MCEstimate estimate() const {
        MCEstimate e;
        e.n = n;
        if (n == 0) return e;
        e.mean = sum / n;
        if (n > 1) {
            double var = std::max(0.0, (sum2 - sum * sum / n) / (n - 1));
            e.se = std::sqrt(var / n);
        }
        return e;
    }
};

// Paired accumulator for ratio estimators; se of mean(u)/mean(v) by the
// delta method with the sample covariance.
struct RatioAcc {
    double su = 0.0, sv = 0.0, suu = 0.0, svv = 0.0, suv = 0.0;
    long n = 0;
    void add(double u, double v) {
        su += u;
        sv += v;
        suu += u * u;
        svv += v * v;
        suv += u * v;
        ++n;
    }
    void merge(const RatioAcc& o) {
        su += o.su;
        sv += o.sv;
        suu += o.suu;
        svv += o.svv;
        suv += o.suv;
        n += o.n;
    }
    MCEstimate ratio() const {
        MCEstimate e;
        e.n = n;
        if (n < 2 || sv == 0.0) return e;
        double mu = su / n, mv = sv / n;
        e.mean = mu / mv;
        double vu = (suu - su * su / n) / (n - 1);
        double vv = (svv - sv * sv / n) / (n - 1);
        double cuv = (suv - su * sv / n) / (n - 1);
        double var = (vu / (mv * mv) + mu * mu * vv / (mv * mv * mv * mv) -
                      2.0 * mu * cuv / (mv * mv * mv)) /
                     n;
        e.se = std::sqrt(std::max(0.0, var));
        return e;
    }
};

// Runs fn(i, acc) for i in [0, N) split into fixed-size blocks. Blocks are
// claimed by worker threads through an atomic counter, but each block's
// result lands in its own slot and slots merge in a fixed pairwise tree, so
// the result is bit-identical for any thread count.
template <class Acc, class Fn>
Acc parallel_accumulate(long N, int threads, Fn&& fn) {
    constexpr long kBlock = 1024;
    long nblocks = (N + kBlock - 1) / kBlock;
    if (nblocks == 0) return Acc{};
    std::vector<Acc> slots(nblocks);
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            long b = next.fetch_add(1);
            if (b >= nblocks) return;
            Acc acc;
            long lo = b * kBlock, hi = std::min(N, lo + kBlock);
            for (long i = lo; i < hi; ++i) fn(i, acc);
            slots[b] = acc;
        }
    };
    int T = std::max(1, threads);
    if (T == 1 || nblocks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // fixed pairwise tree over block slots
    for (long step = 1; step < nblocks; step *= 2)
        for (long i = 0; i + step < nblocks; i += 2 * step)
            slots[i].merge(slots[i + step]);
    return slots[0];
}

}  // namespace stablelab
