#include "ccm/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccm {

// ---- BucketQueue ----

BucketQueue::BucketQueue(int c_max) {
    if (c_max < 0) throw std::invalid_argument("BucketQueue: c_max must be >= 0");
    buckets_.resize(static_cast<std::size_t>(c_max) + 1);
}

void BucketQueue::insert(int cost, int id) {
    if (cost < 0) throw std::invalid_argument("BucketQueue: negative cost");
    if (cost >= static_cast<int>(buckets_.size()))
        buckets_.resize(static_cast<std::size_t>(cost) + 1);  // amortized extension
    buckets_[static_cast<std::size_t>(cost)].push_back(id);
    if (cost < pointer_) pointer_ = cost;
    ++size_;
    ++ops_;
}

std::optional<std::pair<int, int>> BucketQueue::pop_min() {
    if (size_ == 0) return std::nullopt;
    while (buckets_[static_cast<std::size_t>(pointer_)].empty()) {
        ++pointer_;
        ++ops_;
    }
    int id = buckets_[static_cast<std::size_t>(pointer_)].front();
    buckets_[static_cast<std::size_t>(pointer_)].pop_front();
    --size_;
    ++ops_;
    return std::make_pair(pointer_, id);
}

// ---- AvailabilityMultiset ----

void AvailabilityMultiset::insert(int tau, int id) {
    by_tau_[tau].push_back(id);
    ++size_;
    ++ops_;
}

std::optional<std::pair<int, int>> AvailabilityMultiset::first_at_least(int w) {
    ++ops_;
    auto it = by_tau_.lower_bound(w);
    if (it == by_tau_.end()) return std::nullopt;
    return std::make_pair(it->first, it->second.front());
}

std::optional<std::pair<int, int>> AvailabilityMultiset::first_greater(int w) {
    ++ops_;
    auto it = by_tau_.upper_bound(w);
    if (it == by_tau_.end()) return std::nullopt;
    return std::make_pair(it->first, it->second.front());
}

std::optional<std::pair<int, int>> AvailabilityMultiset::longest() {
    ++ops_;
    if (by_tau_.empty()) return std::nullopt;
    auto it = std::prev(by_tau_.end());
    return std::make_pair(it->first, it->second.front());
}

void AvailabilityMultiset::pop(int tau) {
    auto it = by_tau_.find(tau);
    if (it == by_tau_.end()) throw std::logic_error("AvailabilityMultiset: pop on empty key");
    it->second.pop_front();
    if (it->second.empty()) by_tau_.erase(it);
    --size_;
    ++ops_;
}

// ---- FeasibilityTree ----

void FeasibilityTree::Heap::push(std::pair<int, int> x, std::uint64_t& ops) {
    a.push_back(x);
    std::size_t i = a.size() - 1;
    ++ops;
    while (i > 0) {
        std::size_t p = (i - 1) / 2;
        if (a[p] <= a[i]) break;
        std::swap(a[p], a[i]);
        i = p;
        ++ops;
    }
}

void FeasibilityTree::Heap::pop(std::uint64_t& ops) {
    a.front() = a.back();
    a.pop_back();
    ++ops;
    std::size_t i = 0;
    while (true) {
        std::size_t l = 2 * i + 1, r = 2 * i + 2, best = i;
        if (l < a.size() && a[l] < a[best]) best = l;
        if (r < a.size() && a[r] < a[best]) best = r;
        if (best == i) break;
        std::swap(a[i], a[best]);
        i = best;
        ++ops;
    }
}

FeasibilityTree::FeasibilityTree(std::vector<int> taus_sorted_unique)
    : taus_(std::move(taus_sorted_unique)) {
    if (taus_.empty()) throw std::invalid_argument("FeasibilityTree: empty domain");
    for (std::size_t i = 1; i < taus_.size(); ++i)
        if (taus_[i] <= taus_[i - 1])
            throw std::invalid_argument("FeasibilityTree: domain must be sorted unique");
    leaves_ = static_cast<int>(taus_.size());
    heap_.resize(static_cast<std::size_t>(leaves_));
    best_.assign(static_cast<std::size_t>(4 * leaves_), kNone);
    occupied_.assign(static_cast<std::size_t>(4 * leaves_), false);
}

void FeasibilityTree::pull(int node) {
    occupied_[node] = occupied_[2 * node] || occupied_[2 * node + 1];
    std::pair<int, int> l = occupied_[2 * node] ? best_[2 * node] : kNone;
    std::pair<int, int> r = occupied_[2 * node + 1] ? best_[2 * node + 1] : kNone;
    best_[node] = (l <= r) ? l : r;  // ties prefer the left child: smaller tau position
}

void FeasibilityTree::update_path(int leaf) {
    // iterative descent to the leaf node, then pull back up
    int node = 1, lo = 0, hi = leaves_ - 1;
    std::vector<int> path;
    while (lo != hi) {
        path.push_back(node);
        int mid = (lo + hi) / 2;
        if (leaf <= mid) { node = 2 * node; hi = mid; }
        else { node = 2 * node + 1; lo = mid + 1; }
        ++ops_;
    }
    const Heap& h = heap_[static_cast<std::size_t>(leaf)];
    occupied_[node] = !h.a.empty();
    best_[node] = h.a.empty() ? kNone : std::make_pair(h.a.front().first, leaf);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        pull(*it);
        ++ops_;
    }
}

std::pair<int, int> FeasibilityTree::query(int node, int lo, int hi, int from) {
    ++ops_;
    if (hi < from || !occupied_[node]) return kNone;
    if (lo >= from) return best_[node];
    int mid = (lo + hi) / 2;
    std::pair<int, int> l = query(2 * node, lo, mid, from);
    std::pair<int, int> r = query(2 * node + 1, mid + 1, hi, from);
    return (l <= r) ? l : r;
}

int FeasibilityTree::rightmost(int node, int lo, int hi) {
    ++ops_;
    if (!occupied_[node]) return -1;
    if (lo == hi) return lo;
    int mid = (lo + hi) / 2;
    if (occupied_[2 * node + 1]) return rightmost(2 * node + 1, mid + 1, hi);
    return rightmost(2 * node, lo, mid);
}

void FeasibilityTree::insert(int tau, int cost, int id) {
    auto it = std::lower_bound(taus_.begin(), taus_.end(), tau);
    if (it == taus_.end() || *it != tau)
        throw std::invalid_argument("FeasibilityTree: tau outside the compressed domain");
    int leaf = static_cast<int>(it - taus_.begin());
    heap_[static_cast<std::size_t>(leaf)].push({cost, id}, ops_);
    update_path(leaf);
    ++count_;
}

std::optional<FeasibilityTree::Pick> FeasibilityTree::take(int leaf, bool feasible) {
    Heap& h = heap_[static_cast<std::size_t>(leaf)];
    auto top = h.a.front();
    h.pop(ops_);
    update_path(leaf);
    --count_;
    return Pick{taus_[static_cast<std::size_t>(leaf)], top.first, top.second, feasible};
}

std::optional<FeasibilityTree::Pick> FeasibilityTree::match(int w, bool fallback) {
    if (count_ == 0) return std::nullopt;
    auto it = std::lower_bound(taus_.begin(), taus_.end(), w);
    if (it != taus_.end()) {
        int from = static_cast<int>(it - taus_.begin());
        auto best = query(1, 0, leaves_ - 1, from);
        if (best != kNone) return take(best.second, true);
    }
    if (!fallback) return std::nullopt;
    // no feasible leaf: fall back to the longest availability, ties by lower
    // cost then id via the leaf heap order
    int leaf = rightmost(1, 0, leaves_ - 1);
    return take(leaf, false);
}

// ---- matchers ----

namespace {

void record(MatchRunResult& out, int job, int w, const PoolProvider& s, bool feasible) {
    out.outcomes.push_back({job, w, s.id, s.tau, s.cost, feasible});
    ++out.matched;
    if (feasible) ++out.feasible_matched; else ++out.infeasible_matched;
    out.total_cost += s.cost;
}

void reject(MatchRunResult& out, int job, int w) {
    out.outcomes.push_back({job, w, std::nullopt, 0, 0, false});
    ++out.rejected;
}

std::vector<PoolProvider> by_id(std::vector<PoolProvider> pool) {
    std::sort(pool.begin(), pool.end(),
              [](const PoolProvider& a, const PoolProvider& b) { return a.id < b.id; });
    return pool;
}

}  // namespace

MatchRunResult run_gcm(std::vector<PoolProvider> pool, const std::vector<int>& jobs, int c_max) {
    pool = by_id(pool);
    MatchRunResult out;
    BucketQueue q(c_max);
    std::map<int, PoolProvider> info;
    for (const auto& s : pool) {
        q.insert(s.cost, s.id);
        info[s.id] = s;
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        auto hit = q.pop_min();
        if (!hit) { reject(out, static_cast<int>(j), jobs[j]); continue; }
        const PoolProvider& s = info[hit->second];
        record(out, static_cast<int>(j), jobs[j], s, s.tau >= jobs[j]);
    }
    out.ops = q.ops();
    return out;
}

MatchRunResult run_gsm(std::vector<PoolProvider> pool, const std::vector<int>& jobs, GsmFallback fb) {
    pool = by_id(pool);
    MatchRunResult out;
    AvailabilityMultiset ms;
    std::map<int, PoolProvider> info;
    for (const auto& s : pool) {
        ms.insert(s.tau, s.id);
        info[s.id] = s;
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        int w = jobs[j];
        auto hit = ms.first_at_least(w);
        if (hit) {
            ms.pop(hit->first);
            record(out, static_cast<int>(j), w, info[hit->second], true);
            continue;
        }
        if (fb == GsmFallback::reject || ms.empty()) {
            reject(out, static_cast<int>(j), w);
            continue;
        }
        auto longest = ms.longest();
        ms.pop(longest->first);
        record(out, static_cast<int>(j), w, info[longest->second], false);
    }
    out.ops = ms.ops();
    return out;
}

MatchRunResult run_cfm(std::vector<PoolProvider> pool, const std::vector<int>& jobs,
                       CfmFallback fb) {
    pool = by_id(pool);
    MatchRunResult out;
    std::vector<int> domain;
    for (const auto& s : pool) domain.push_back(s.tau);
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    if (domain.empty()) {
        for (std::size_t j = 0; j < jobs.size(); ++j) reject(out, static_cast<int>(j), jobs[j]);
        return out;
    }
    FeasibilityTree tree(domain);
    std::map<int, PoolProvider> info;
    for (const auto& s : pool) {
        tree.insert(s.tau, s.cost, s.id);
        info[s.id] = s;
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        auto pick = tree.match(jobs[j], fb == CfmFallback::overload);
        if (!pick) { reject(out, static_cast<int>(j), jobs[j]); continue; }
        record(out, static_cast<int>(j), jobs[j], info[pick->id], pick->feasible);
    }
    out.ops = tree.ops();
    return out;
}

MatchRunResult run_matcher(Algo algo, GsmFallback fb, std::vector<PoolProvider> pool,
                           const std::vector<int>& jobs, int c_max) {
    switch (algo) {
        case Algo::gcm: return run_gcm(std::move(pool), jobs, c_max);
        case Algo::gsm: return run_gsm(std::move(pool), jobs, fb);
        case Algo::cfm: return run_cfm(std::move(pool), jobs);
    }
    throw std::logic_error("run_matcher: bad algo");
}

MatchRunResult run_naive(Algo algo, GsmFallback fb, std::vector<PoolProvider> pool,
                         const std::vector<int>& jobs, int /*c_max*/, CfmFallback cfb) {
    pool = by_id(pool);
    MatchRunResult out;
    std::vector<bool> used(pool.size(), false);
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        int w = jobs[j];
        int pick = -1;
        bool pick_feasible = false;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) continue;
            ++out.ops;
            const PoolProvider& s = pool[i];
            bool feas = s.tau >= w;
            switch (algo) {
                case Algo::gcm:
                    // min (cost, id)
                    if (pick < 0 || s.cost < pool[pick].cost) { pick = static_cast<int>(i); pick_feasible = feas; }
                    break;
                case Algo::gsm:
                    if (feas && (!pick_feasible || s.tau < pool[pick].tau)) {
                        pick = static_cast<int>(i); pick_feasible = true;
                    } else if (!feas && !pick_feasible && fb == GsmFallback::longest &&
                               (pick < 0 || s.tau > pool[pick].tau)) {
                        pick = static_cast<int>(i);
                    }
                    break;
                case Algo::cfm:
                    if (feas) {
                        if (!pick_feasible || std::tuple(s.cost, s.tau, s.id) <
                                                  std::tuple(pool[pick].cost, pool[pick].tau, pool[pick].id)) {
                            pick = static_cast<int>(i); pick_feasible = true;
                        }
                    } else if (!pick_feasible) {
                        if (pick < 0 || std::tuple(-s.tau, s.cost, s.id) <
                                            std::tuple(-pool[pick].tau, pool[pick].cost, pool[pick].id)) {
                            pick = static_cast<int>(i);
                        }
                    }
                    break;
            }
        }
        const bool bounce = !pick_feasible && ((algo == Algo::gsm && fb == GsmFallback::reject) ||
                                               (algo == Algo::cfm && cfb == CfmFallback::reject));
        if (pick < 0 || bounce) {
            reject(out, static_cast<int>(j), w);
            continue;
        }
        used[static_cast<std::size_t>(pick)] = true;
        record(out, static_cast<int>(j), w, pool[static_cast<std::size_t>(pick)],
               pool[static_cast<std::size_t>(pick)].tau >= w);
    }
    return out;
}

// ---- deficiency ----

DeficiencyResult deficiency(std::vector<int> taus, const std::vector<int>& jobs) {
    std::sort(taus.begin(), taus.end());
    const int m = static_cast<int>(taus.size());
    const int n = static_cast<int>(jobs.size());
    std::vector<int> count(static_cast<std::size_t>(m) + 2, 0);  // t(d) histogram, 1-based
    for (int w : jobs) {
        auto it = std::lower_bound(taus.begin(), taus.end(), w);
        int t = (it == taus.end()) ? m + 1 : static_cast<int>(it - taus.begin()) + 1;
        ++count[static_cast<std::size_t>(t)];
    }
    int delta = 0, suffix = 0;
    for (int i = m + 1; i >= 1; --i) {
        suffix += count[static_cast<std::size_t>(i)];        // |D_>=i|
        int supply = (i <= m) ? m - i + 1 : 0;               // |S_>=i|
        delta = std::max(delta, suffix - supply);
    }
    return {delta, n - delta};
}

// ---- oracles ----

int oracle_max_feasible(const std::vector<int>& taus, const std::vector<int>& jobs) {
    const int m = static_cast<int>(taus.size());
    const int n = static_cast<int>(jobs.size());
    if (m > 16 || n > 20) throw std::invalid_argument("oracle_max_feasible: instance too large");
    std::vector<int> memo(static_cast<std::size_t>(n + 1) << m, -1);
    // dp over (next job, providers used); assigning infeasibly never helps the count
    auto rec = [&](auto&& self, int j, unsigned mask) -> int {
        if (j == n) return 0;
        int& slot = memo[(static_cast<std::size_t>(j) << m) | mask];
        if (slot >= 0) return slot;
        int best = self(self, j + 1, mask);  // leave job j unmatched
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) continue;
            if (taus[static_cast<std::size_t>(i)] >= jobs[static_cast<std::size_t>(j)])
                best = std::max(best, 1 + self(self, j + 1, mask | (1u << i)));
        }
        slot = best;
        return best;
    };
    return rec(rec, 0, 0u);
}

std::int64_t oracle_min_cost_forced(const std::vector<PoolProvider>& pool, int n_jobs) {
    const int m = static_cast<int>(pool.size());
    if (m > 16) throw std::invalid_argument("oracle_min_cost_forced: instance too large");
    std::vector<std::int64_t> memo(static_cast<std::size_t>(n_jobs + 1) << m, -1);
    auto rec = [&](auto&& self, int j, unsigned mask) -> std::int64_t {
        if (j == n_jobs || mask == (m ? (1u << m) - 1u : 0u)) return 0;  // pool exhausted: rest rejected
        std::int64_t& slot = memo[(static_cast<std::size_t>(j) << m) | mask];
        if (slot >= 0) return slot;
        std::int64_t best = INT64_MAX;
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) continue;
            best = std::min(best, pool[static_cast<std::size_t>(i)].cost +
                                      self(self, j + 1, mask | (1u << i)));
        }
        slot = best;
        return best;
    };
    return rec(rec, 0, 0u);
}

}  // namespace ccm
