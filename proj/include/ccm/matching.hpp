#pragma once
// Online matchers and their exact data structures. One period, one pool of
// idle active providers, jobs arriving in sequence. Feasibility rule used
// everywhere: a provider covers a job iff tau >= w. Deterministic tie-breaks:
// cost, then position in the tau-ascending order, then id.
//
// Structures carry operation counters (one tick per bucket-pointer advance,
// tree node visit, heap sift step or queue op) so complexity can be measured
// without wall clocks.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "ccm/money.hpp"

namespace ccm {

struct PoolProvider {
    int id{0};
    int tau{0};        // remaining availability, hours
    int cost{0};       // reported cost, ticks
};

// ---- bucket queue (GCM) ----
// Array of FIFO buckets indexed by cost tick, with a monotone scan pointer.
// Pops amortize to O(1) per job for a fixed tick range.
class BucketQueue {
public:
    explicit BucketQueue(int c_max);
    void insert(int cost, int id);                    // extends amortized past c_max
    std::optional<std::pair<int, int>> pop_min();     // (cost, id), FIFO within a bucket
    bool empty() const { return size_ == 0; }
    int size() const { return size_; }
    std::uint64_t ops() const { return ops_; }

private:
    std::vector<std::deque<int>> buckets_;
    int pointer_{0};
    int size_{0};
    std::uint64_t ops_{0};
};

// ---- availability multiset (GSM) ----
// Ordered map tau -> FIFO of ids (insert in ascending id order to keep the
// lower-id tie-break). Balanced-BST searches; the op counter ticks once per
// search/erase rather than per tree step.
class AvailabilityMultiset {
public:
    void insert(int tau, int id);
    std::optional<std::pair<int, int>> first_at_least(int w);  // smallest tau >= w
    std::optional<std::pair<int, int>> first_greater(int w);   // smallest tau > w
    std::optional<std::pair<int, int>> longest();              // max tau
    void pop(int tau);                                         // remove that bucket's front
    bool empty() const { return size_ == 0; }
    int size() const { return size_; }
    std::uint64_t ops() const { return ops_; }

private:
    std::map<int, std::deque<int>> by_tau_;
    int size_{0};
    std::uint64_t ops_{0};
};

// ---- feasibility tree (CFM) ----
// Segment tree over the compressed distinct tau values; each leaf holds a
// min-heap of (cost, id), each node the best (cost, leaf) in its subtree plus
// an occupancy flag. Feasible pick = range-min over leaves with tau >= w;
// no feasible leaf falls back to the rightmost occupied leaf (max tau, ties
// by lower cost then id).
class FeasibilityTree {
public:
    explicit FeasibilityTree(std::vector<int> taus_sorted_unique);

    struct Pick {
        int tau{0};
        int cost{0};
        int id{0};
        bool feasible{true};
    };

    void insert(int tau, int cost, int id);       // tau must be in the compressed domain
    std::optional<Pick> match(int w, bool fallback = true);  // pops the picked provider
    bool empty() const { return count_ == 0; }
    int size() const { return count_; }
    std::uint64_t ops() const { return ops_; }

private:
    struct Heap {  // binary min-heap over (cost, id)
        std::vector<std::pair<int, int>> a;
        void push(std::pair<int, int> x, std::uint64_t& ops);
        void pop(std::uint64_t& ops);
    };

    int leaves_{0};
    std::vector<int> taus_;                  // compressed domain, ascending
    std::vector<Heap> heap_;                 // per leaf
    std::vector<std::pair<int, int>> best_;  // per node: (cost, leaf), occupied leaves only
    std::vector<bool> occupied_;             // per node
    int count_{0};
    std::uint64_t ops_{0};

    static constexpr std::pair<int, int> kNone{INT32_MAX, INT32_MAX};
    void pull(int node);
    void update_path(int leaf);
    std::pair<int, int> query(int node, int lo, int hi, int from);
    int rightmost(int node, int lo, int hi);
    std::optional<Pick> take(int leaf, bool feasible);
};

// ---- matchers ----

enum class Algo { gcm, gsm, cfm };
enum class GsmFallback { reject, longest };
// overload: an infeasible job consumes the longest remaining provider for a
// partial run (the live-market behavior). reject: the job bounces and the
// pool is untouched — the single-shot model the count-regret bound is stated
// for, where a rejection must not degrade later jobs.
enum class CfmFallback { overload, reject };

struct MatchOutcome {
    int job{0};                     // index into the arrival sequence
    int w{0};
    std::optional<int> provider{};  // nullopt = rejected (no pool / reject mode)
    int provider_tau{0};
    int provider_cost{0};
    bool feasible{false};
};

struct MatchRunResult {
    std::vector<MatchOutcome> outcomes;
    int matched{0};
    int feasible_matched{0};
    int infeasible_matched{0};
    int rejected{0};
    std::int64_t total_cost{0};  // ticks, over all matched pairs
    std::uint64_t ops{0};
};

// c_max: bucket range for GCM, normally the posted price in ticks.
MatchRunResult run_gcm(std::vector<PoolProvider> pool, const std::vector<int>& jobs, int c_max);
MatchRunResult run_gsm(std::vector<PoolProvider> pool, const std::vector<int>& jobs, GsmFallback fb);
MatchRunResult run_cfm(std::vector<PoolProvider> pool, const std::vector<int>& jobs,
                       CfmFallback fb = CfmFallback::overload);
MatchRunResult run_matcher(Algo algo, GsmFallback fb, std::vector<PoolProvider> pool,
                           const std::vector<int>& jobs, int c_max);

// Serial reference implementations: identical semantics via linear scans.
// Kept as oracles for the structure-backed matchers and as the baseline in
// complexity benchmarks.
MatchRunResult run_naive(Algo algo, GsmFallback fb, std::vector<PoolProvider> pool,
                         const std::vector<int>& jobs, int c_max,
                         CfmFallback cfb = CfmFallback::overload);

// ---- deficiency ----
// Delta = max over i in [1, m+1] of (|D_>=i| - |S_>=i|)_+ where t(d) is the
// first position in the tau-ascending provider order that covers d (m+1 when
// none does). GSM in reject mode matches exactly n - Delta jobs.
struct DeficiencyResult {
    int delta{0};
    int predicted_gsm{0};  // n - delta
};
DeficiencyResult deficiency(std::vector<int> taus, const std::vector<int>& jobs);

// ---- brute-force oracles (exponential; small instances only) ----

// Maximum number of feasibly matched jobs over all partial assignments.
int oracle_max_feasible(const std::vector<int>& taus, const std::vector<int>& jobs);

// Minimum total matched cost when every job must be matched while providers
// remain (feasibility ignored): the objective GCM optimizes.
std::int64_t oracle_min_cost_forced(const std::vector<PoolProvider>& pool, int n_jobs);

}  // namespace ccm
