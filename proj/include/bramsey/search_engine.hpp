#pragma once

#include <bramsey/bigraph.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bramsey {

/// Knobs shared by every exhaustive search.  All pruning toggles are
/// admissible: switching them off changes node counts, never verdicts.
struct SearchConfig {
    std::uint64_t node_budget = 50'000'000;
    bool use_degree_lemmas = true;
    bool use_edge_window = true;
    bool use_symmetry_breaking = true;
    bool use_capacity_bound = true;
    unsigned worker_count = 1;
    /// With several workers and this off, subtrees share their incumbent;
    /// values stay exact but the reported witness may vary between runs.
    bool deterministic = true;

    void validate() const
    {
        if (node_budget < 1)
            throw std::invalid_argument("node_budget must be at least 1");
        if (worker_count < 1)
            throw std::invalid_argument("worker_count must be at least 1");
    }
};

namespace search {

    /// Column masks are machine words over the row side, so the row side of
    /// a native search is limited to this many vertices.
    inline constexpr unsigned max_rows = 20;

    using Mask = std::uint32_t;

    enum class Goal { feasible, max_edges };

    /// A search over graphs on `rows` x `columns` built one column at a time.
    /// Row i of the graph is bit (rows - 1 - i) of every column mask, so
    /// integer order on masks is lexicographic order with row 0 leading.
    struct Problem {
        unsigned rows = 0;
        unsigned columns = 0;
        /// Shapes are (rows of the pattern, columns of the pattern); a shape
        /// that cannot fit is dropped by the caller.
        std::optional<BicliqueShape> forbid_in_g;
        std::optional<BicliqueShape> forbid_in_complement;
        unsigned row_degree_cap = std::numeric_limits<unsigned>::max();
        unsigned column_degree_cap = std::numeric_limits<unsigned>::max();
        std::uint64_t min_edges = 0;
        std::uint64_t max_edges = std::numeric_limits<std::uint64_t>::max();
        Goal goal = Goal::feasible;
    };

    struct Outcome {
        /// Feasible goal: a witness was found or the space was exhausted.
        /// Max-edges goal: the optimum is proven.
        bool complete = false;
        std::uint64_t nodes = 0;
        std::optional<std::vector<Mask>> columns;
        std::uint64_t best_edges = 0;
        /// Max-edges goal: an upper bound on the optimum valid even when the
        /// budget ran out.
        std::uint64_t proven_upper = 0;
    };

    inline auto to_graph(unsigned rows, const std::vector<Mask> & cols) -> BipartiteGraph
    {
        BipartiteGraph g(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (unsigned i = 0; i < rows; ++i)
                if ((cols[j] >> (rows - 1 - i)) & 1u)
                    g.add_edge(i, j);
        return g;
    }

    inline auto binomial(std::uint64_t n, std::uint64_t k) -> std::uint64_t
    {
        if (k > n)
            return 0;
        k = std::min(k, n - k);
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= k; ++i)
            r = r * (n - k + i) / i;
        return r;
    }

    /// Pooled-cost tables.  Every column of degree d adds C(d, s1) to the
    /// sum of the G-side subset counters and C(rows - d, s2) to the
    /// complement-side sum; both sums are capped by (t - 1) * C(rows, s).
    /// The tables answer, for r columns still to place, the best any
    /// multiset of degrees can do against the remaining capacity.
    class CapacityTables {
    public:
        static constexpr std::uint64_t unreachable = std::numeric_limits<std::uint64_t>::max() / 4;
        static constexpr std::uint64_t max_cells = 8'000'000;

        CapacityTables() = default;

        CapacityTables(const Problem & p, bool enabled)
        {
            max_degree_ = std::min<unsigned>(p.rows, p.column_degree_cap);
            cost1_.assign(max_degree_ + 1, 0);
            cost2_.assign(max_degree_ + 1, 0);
            if (p.forbid_in_g) {
                cap1_ = (p.forbid_in_g->t - 1) * binomial(p.rows, p.forbid_in_g->s);
                for (unsigned d = 0; d <= max_degree_; ++d)
                    cost1_[d] = binomial(d, p.forbid_in_g->s);
            }
            if (p.forbid_in_complement) {
                cap2_ = (p.forbid_in_complement->t - 1) * binomial(p.rows, p.forbid_in_complement->s);
                for (unsigned d = 0; d <= max_degree_; ++d)
                    cost2_[d] = binomial(p.rows - d, p.forbid_in_complement->s);
            }
            columns_ = p.columns;
            if (! enabled)
                return;

            if ((columns_ + 1) * (cap1_ + 1) <= max_cells) {
                have1_ = true;
                need2_.assign((columns_ + 1) * (cap1_ + 1), 0);
                max_edges_.assign((columns_ + 1) * (cap1_ + 1), 0);
                for (unsigned r = 1; r <= columns_; ++r)
                    for (std::uint64_t c = 0; c <= cap1_; ++c) {
                        std::uint64_t best_need = unreachable, best_edges = 0;
                        for (unsigned d = 0; d <= max_degree_; ++d) {
                            if (cost1_[d] > c)
                                continue;
                            auto prev = at1(r - 1, c - cost1_[d]);
                            best_need = std::min(best_need, cost2_[d] + need2_[prev]);
                            best_edges = std::max<std::uint64_t>(best_edges, d + max_edges_[prev]);
                        }
                        need2_[at1(r, c)] = best_need;
                        max_edges_[at1(r, c)] = best_edges;
                    }
            }
            if ((columns_ + 1) * (cap2_ + 1) <= max_cells) {
                have2_ = true;
                min_edges_.assign((columns_ + 1) * (cap2_ + 1), 0);
                for (unsigned r = 1; r <= columns_; ++r)
                    for (std::uint64_t c = 0; c <= cap2_; ++c) {
                        std::uint64_t best = unreachable;
                        for (unsigned d = 0; d <= max_degree_; ++d) {
                            if (cost2_[d] > c)
                                continue;
                            auto prev = min_edges_[at2(r - 1, c - cost2_[d])];
                            if (prev != unreachable)
                                best = std::min<std::uint64_t>(best, d + prev);
                        }
                        min_edges_[at2(r, c)] = best;
                    }
            }
        }

        auto cap1() const -> std::uint64_t { return cap1_; }
        auto cap2() const -> std::uint64_t { return cap2_; }
        auto cost1(unsigned d) const -> std::uint64_t { return cost1_[d]; }
        auto cost2(unsigned d) const -> std::uint64_t { return cost2_[d]; }

        /// Smallest complement-side cost of r more columns.
        auto need2(unsigned r, std::uint64_t cap1_left) const -> std::uint64_t
        {
            return have1_ ? need2_[at1(r, cap1_left)] : 0;
        }

        /// Most edges r more columns can carry.
        auto max_more_edges(unsigned r, std::uint64_t cap1_left) const -> std::uint64_t
        {
            return have1_ ? max_edges_[at1(r, cap1_left)] : std::uint64_t{r} * max_degree_;
        }

        /// Fewest edges r more columns can carry; unreachable if none fit.
        auto min_more_edges(unsigned r, std::uint64_t cap2_left) const -> std::uint64_t
        {
            return have2_ ? min_edges_[at2(r, cap2_left)] : 0;
        }

    private:
        auto at1(unsigned r, std::uint64_t c) const -> std::size_t { return r * (cap1_ + 1) + c; }
        auto at2(unsigned r, std::uint64_t c) const -> std::size_t { return r * (cap2_ + 1) + c; }

        unsigned max_degree_ = 0;
        unsigned columns_ = 0;
        std::uint64_t cap1_ = 0, cap2_ = 0;
        std::vector<std::uint64_t> cost1_, cost2_;
        bool have1_ = false, have2_ = false;
        std::vector<std::uint64_t> need2_, max_edges_, min_edges_;
    };

    /// Upper bound on edges of a graph on rows x columns avoiding the shape
    /// in G, from the pooled subset-count argument alone.
    inline auto counting_edge_bound(unsigned rows, unsigned columns, const BicliqueShape & shape) -> std::uint64_t
    {
        Problem p;
        p.rows = rows;
        p.columns = columns;
        if (shape.s <= rows && shape.t <= columns)
            p.forbid_in_g = shape;
        CapacityTables t(p, true);
        return t.max_more_edges(columns, t.cap1());
    }

    namespace detail {

        /// Calls f(subset) for every k-element submask of mask until f
        /// returns false; returns whether the walk completed.
        template <typename F>
        auto for_each_submask_of_size(Mask mask, unsigned k, F && f) -> bool
        {
            if (k == 0)
                return f(Mask{0});
            if (static_cast<unsigned>(std::popcount(mask)) < k)
                return true;
            Mask bits[32];
            unsigned n = 0;
            for (Mask w = mask; w; w &= w - 1)
                bits[n++] = w & (~w + 1);
            unsigned idx[32];
            for (unsigned i = 0; i < k; ++i)
                idx[i] = i;
            while (true) {
                Mask s = 0;
                for (unsigned i = 0; i < k; ++i)
                    s |= bits[idx[i]];
                if (! f(s))
                    return false;
                int i = static_cast<int>(k) - 1;
                while (i >= 0 && idx[i] == n - k + static_cast<unsigned>(i))
                    --i;
                if (i < 0)
                    return true;
                ++idx[i];
                for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }

        struct Improvement {
            std::uint64_t node;
            std::uint64_t edges;
            std::vector<Mask> columns;
        };

        struct TaskResult {
            bool complete = false;
            std::uint64_t nodes = 0;
            std::optional<std::uint64_t> found_at;
            std::vector<Mask> witness;
            std::vector<Improvement> history;
        };

        /// Depth-first search from a fixed prefix.
        class Engine {
        public:
            Engine(const Problem & p, const CapacityTables & tables, bool symmetry_breaking, bool capacity_bound) :
                p_(p),
                tables_(tables),
                symmetry_breaking_(symmetry_breaking),
                capacity_bound_(capacity_bound),
                full_((p.rows == 32) ? ~Mask{0} : ((Mask{1} << p.rows) - 1)),
                tied_(full_ & ~Mask{1}),
                row_degree_(p.rows, 0)
            {
                if (p.forbid_in_g)
                    counts_g_.assign(std::size_t{1} << p.rows, 0);
                if (p.forbid_in_complement)
                    counts_c_.assign(std::size_t{1} << p.rows, 0);
                if (p.goal == Goal::max_edges)
                    order_ = degree_order(p.rows, full_);
                cols_.reserve(p.columns);
            }

            auto full_mask() const -> Mask { return full_; }
            auto depth() const -> std::size_t { return cols_.size(); }

            /// Local checks for appending column c to the current prefix.
            auto admissible(Mask c) const -> bool
            {
                if (symmetry_breaking_) {
                    if (! cols_.empty() && c > cols_.back())
                        return false;
                    if (tied_ & ~c & (c << 1))
                        return false;
                }
                auto deg = static_cast<unsigned>(std::popcount(c));
                if (deg > p_.column_degree_cap)
                    return false;
                if (c & saturated_rows_)
                    return false;
                if (edges_ + deg > p_.max_edges)
                    return false;
                if (p_.forbid_in_g) {
                    auto limit = static_cast<std::uint16_t>(p_.forbid_in_g->t - 1);
                    if (! for_each_submask_of_size(c, p_.forbid_in_g->s,
                                                   [&](Mask s) { return counts_g_[s] < limit; }))
                        return false;
                }
                if (p_.forbid_in_complement) {
                    auto limit = static_cast<std::uint16_t>(p_.forbid_in_complement->t - 1);
                    if (! for_each_submask_of_size(full_ & ~c, p_.forbid_in_complement->s,
                                                   [&](Mask s) { return counts_c_[s] < limit; }))
                        return false;
                }
                return true;
            }

            void push(Mask c)
            {
                auto deg = static_cast<unsigned>(std::popcount(c));
                if (p_.forbid_in_g) {
                    for_each_submask_of_size(c, p_.forbid_in_g->s, [&](Mask s) {
                        ++counts_g_[s];
                        return true;
                    });
                    used1_ += tables_.cost1(deg);
                }
                if (p_.forbid_in_complement) {
                    for_each_submask_of_size(full_ & ~c, p_.forbid_in_complement->s, [&](Mask s) {
                        ++counts_c_[s];
                        return true;
                    });
                    used2_ += tables_.cost2(deg);
                }
                for (Mask w = c; w; w &= w - 1) {
                    auto bit = static_cast<unsigned>(std::countr_zero(w));
                    if (++row_degree_[bit] == p_.row_degree_cap)
                        saturated_rows_ |= Mask{1} << bit;
                }
                edges_ += deg;
                tied_stack_.push_back(tied_);
                tied_ &= ~(c ^ (c << 1));
                cols_.push_back(c);
            }

            void pop()
            {
                auto c = cols_.back();
                cols_.pop_back();
                tied_ = tied_stack_.back();
                tied_stack_.pop_back();
                auto deg = static_cast<unsigned>(std::popcount(c));
                edges_ -= deg;
                for (Mask w = c; w; w &= w - 1) {
                    auto bit = static_cast<unsigned>(std::countr_zero(w));
                    if (row_degree_[bit]-- == p_.row_degree_cap)
                        saturated_rows_ &= ~(Mask{1} << bit);
                }
                if (p_.forbid_in_complement) {
                    for_each_submask_of_size(full_ & ~c, p_.forbid_in_complement->s, [&](Mask s) {
                        --counts_c_[s];
                        return true;
                    });
                    used2_ -= tables_.cost2(deg);
                }
                if (p_.forbid_in_g) {
                    for_each_submask_of_size(c, p_.forbid_in_g->s, [&](Mask s) {
                        --counts_g_[s];
                        return true;
                    });
                    used1_ -= tables_.cost1(deg);
                }
            }

            /// Upper bound on the final edge count reachable from this prefix.
            auto edge_upper_bound() const -> std::uint64_t
            {
                auto r = static_cast<unsigned>(p_.columns - cols_.size());
                std::uint64_t more = std::uint64_t{r} * std::min<unsigned>(p_.rows, p_.column_degree_cap);
                if (capacity_bound_)
                    more = std::min(more, tables_.max_more_edges(r, tables_.cap1() - used1_));
                if (p_.row_degree_cap != std::numeric_limits<unsigned>::max()) {
                    std::uint64_t room = 0;
                    for (auto d : row_degree_)
                        room += p_.row_degree_cap - d;
                    more = std::min(more, room);
                }
                return edges_ + more;
            }

            /// Whether the prefix can still be completed, judged by pooled
            /// capacities and the edge window.
            auto viable() const -> bool
            {
                auto r = static_cast<unsigned>(p_.columns - cols_.size());
                if (capacity_bound_) {
                    if (tables_.need2(r, tables_.cap1() - used1_) > tables_.cap2() - used2_)
                        return false;
                    auto least = tables_.min_more_edges(r, tables_.cap2() - used2_);
                    if (least == CapacityTables::unreachable || edges_ + least > p_.max_edges)
                        return false;
                }
                return edge_upper_bound() >= p_.min_edges;
            }

            /// Explores every completion of the current prefix.  `budget`
            /// counts pushes; the search stops as soon as it is spent.
            auto explore(std::uint64_t budget, const std::atomic<bool> * cancel,
                         std::atomic<std::uint64_t> * shared_best) -> TaskResult
            {
                budget_ = budget;
                cancel_ = cancel;
                shared_best_ = shared_best;
                result_ = TaskResult{};
                aborted_ = false;
                found_ = false;
                dfs();
                result_.complete = ! aborted_;
                return std::move(result_);
            }

            auto columns() const -> const std::vector<Mask> & { return cols_; }
            auto edges() const -> std::uint64_t { return edges_; }

            void set_incumbent(std::optional<std::uint64_t> v) { incumbent_ = v; }

        private:
            static auto degree_order(unsigned rows, Mask full) -> std::vector<Mask>
            {
                std::vector<Mask> out;
                out.reserve(std::size_t{full} + 1);
                for (std::uint64_t c = 0; c <= full; ++c)
                    out.push_back(static_cast<Mask>(c));
                std::stable_sort(out.begin(), out.end(), [](Mask a, Mask b) {
                    auto da = std::popcount(a), db = std::popcount(b);
                    return da != db ? da > db : a > b;
                });
                (void)rows;
                return out;
            }

            auto beats_incumbent(std::uint64_t bound) const -> bool
            {
                std::optional<std::uint64_t> best = incumbent_;
                if (shared_best_) {
                    auto shared = shared_best_->load(std::memory_order_relaxed);
                    if (shared != 0 && (! best || shared - 1 > *best))
                        best = shared - 1;
                }
                return ! best || bound > *best;
            }

            auto leaf() -> void
            {
                if (p_.goal == Goal::feasible) {
                    found_ = true;
                    result_.found_at = result_.nodes;
                    result_.witness = cols_;
                    return;
                }
                if (! beats_incumbent(edges_))
                    return;
                incumbent_ = edges_;
                result_.history.push_back({result_.nodes, edges_, cols_});
                if (shared_best_) {
                    auto mine = edges_ + 1;
                    auto cur = shared_best_->load(std::memory_order_relaxed);
                    while (cur < mine && ! shared_best_->compare_exchange_weak(cur, mine))
                        ;
                }
            }

            /// Returns false to unwind (budget, cancellation or witness found).
            auto try_child(Mask c) -> bool
            {
                if (! admissible(c))
                    return true;
                if (result_.nodes == budget_ || (cancel_ && cancel_->load(std::memory_order_relaxed))) {
                    aborted_ = true;
                    return false;
                }
                ++result_.nodes;
                push(c);
                bool keep_going = true;
                if (viable() && (p_.goal == Goal::feasible || beats_incumbent(edge_upper_bound())))
                    keep_going = dfs();
                pop();
                return keep_going;
            }

            auto dfs() -> bool
            {
                if (cols_.size() == p_.columns) {
                    leaf();
                    return ! found_;
                }
                Mask top = (symmetry_breaking_ && ! cols_.empty()) ? cols_.back() : full_;
                if (p_.goal == Goal::feasible) {
                    for (std::int64_t c = top; c >= 0; --c)
                        if (! try_child(static_cast<Mask>(c)))
                            return false;
                }
                else {
                    for (auto c : order_) {
                        if (c > top)
                            continue;
                        if (! try_child(c))
                            return false;
                    }
                }
                return true;
            }

            const Problem & p_;
            const CapacityTables & tables_;
            bool symmetry_breaking_;
            bool capacity_bound_;
            Mask full_;
            Mask tied_;
            std::vector<Mask> tied_stack_;
            std::vector<std::uint16_t> counts_g_, counts_c_;
            std::vector<unsigned> row_degree_;
            Mask saturated_rows_ = 0;
            std::uint64_t used1_ = 0, used2_ = 0;
            std::uint64_t edges_ = 0;
            std::vector<Mask> cols_;
            std::vector<Mask> order_;

            std::optional<std::uint64_t> incumbent_;
            std::uint64_t budget_ = 0;
            const std::atomic<bool> * cancel_ = nullptr;
            std::atomic<std::uint64_t> * shared_best_ = nullptr;
            TaskResult result_;
            bool aborted_ = false;
            bool found_ = false;
        };

        inline auto lex_less_columns(unsigned rows, const std::vector<Mask> & a, const std::vector<Mask> & b) -> bool
        {
            return matrix_less(to_graph(rows, a), to_graph(rows, b));
        }

    } // namespace detail

    /// Runs the search.  The root is split into one task per admissible first
    /// column; tasks are explored in a fixed order with a shared node budget
    /// and independent incumbents, so the outcome does not depend on the
    /// number of workers.
    inline auto run(const Problem & p, const SearchConfig & config) -> Outcome
    {
        config.validate();
        if (p.rows > max_rows)
            throw std::invalid_argument("native search supports at most " + std::to_string(max_rows) +
                                        " vertices on the mask side");
        if (p.forbid_in_g && (p.forbid_in_g->t - 1) > 0xffffu)
            throw std::invalid_argument("shape too wide for subset counters");
        if (p.forbid_in_complement && (p.forbid_in_complement->t - 1) > 0xffffu)
            throw std::invalid_argument("shape too wide for subset counters");

        CapacityTables tables(p, config.use_capacity_bound);
        detail::Engine root(p, tables, config.use_symmetry_breaking, config.use_capacity_bound);

        Outcome out;
        out.nodes = 1;

        if (! root.viable()) {
            out.complete = true;
            out.proven_upper = 0;
            return out;
        }
        if (p.columns == 0) {
            out.complete = true;
            out.columns = std::vector<Mask>{};
            return out;
        }

        struct Task {
            Mask first;
            std::uint64_t root_bound;
            bool viable;
        };
        std::vector<Task> tasks;
        auto consider = [&](Mask c) {
            if (! root.admissible(c))
                return;
            root.push(c);
            tasks.push_back({c, root.edge_upper_bound(), root.viable()});
            root.pop();
        };
        if (p.goal == Goal::feasible) {
            for (std::int64_t c = root.full_mask(); c >= 0; --c)
                consider(static_cast<Mask>(c));
        }
        else {
            std::vector<Mask> order;
            for (std::uint64_t c = 0; c <= root.full_mask(); ++c)
                order.push_back(static_cast<Mask>(c));
            std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) {
                auto da = std::popcount(a), db = std::popcount(b);
                return da != db ? da > db : a > b;
            });
            for (auto c : order)
                consider(c);
        }

        std::vector<detail::TaskResult> results(tasks.size());
        const auto budget_after_root = config.node_budget - 1;

        auto run_task = [&](std::size_t k, std::uint64_t budget, const std::atomic<bool> * cancel,
                            std::atomic<std::uint64_t> * shared_best) {
            detail::TaskResult r;
            if (budget == 0) {
                results[k] = r;
                return;
            }
            detail::Engine e(p, tables, config.use_symmetry_breaking, config.use_capacity_bound);
            e.push(tasks[k].first);
            if (! tasks[k].viable) {
                r.complete = true;
                r.nodes = 1;
                results[k] = r;
                return;
            }
            r = e.explore(budget - 1, cancel, shared_best);
            ++r.nodes;
            if (r.found_at)
                ++*r.found_at;
            for (auto & h : r.history)
                ++h.node;
            results[k] = std::move(r);
        };

        if (config.worker_count <= 1 || tasks.size() <= 1) {
            auto remaining = budget_after_root;
            for (std::size_t k = 0; k < tasks.size(); ++k) {
                run_task(k, remaining, nullptr, nullptr);
                remaining -= std::min(remaining, results[k].nodes);
                if (results[k].found_at || remaining == 0)
                    break;
            }
        }
        else {
            std::atomic<std::size_t> next{0};
            std::atomic<bool> stop_after_found{false};
            std::atomic<std::size_t> found_index{tasks.size()};
            std::atomic<std::uint64_t> shared_best{0};
            std::vector<std::atomic<bool>> cancel(tasks.size());
            std::mutex mutex;
            auto worker = [&] {
                while (true) {
                    auto k = next.fetch_add(1);
                    if (k >= tasks.size())
                        return;
                    if (k > found_index.load())
                        continue;
                    run_task(k, budget_after_root, &cancel[k],
                             (p.goal == Goal::max_edges && ! config.deterministic) ? &shared_best : nullptr);
                    if (results[k].found_at) {
                        std::lock_guard lock(mutex);
                        if (k < found_index.load()) {
                            found_index.store(k);
                            for (auto j = k + 1; j < tasks.size(); ++j)
                                cancel[j].store(true);
                        }
                        stop_after_found.store(true);
                    }
                }
            };
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < config.worker_count; ++w)
                pool.emplace_back(worker);
        }

        // Replay in task order against the shared budget.
        auto remaining = budget_after_root;
        bool complete = true;
        std::optional<std::uint64_t> best;
        std::optional<std::vector<Mask>> best_cols;
        std::uint64_t open_bound = 0;
        auto offer = [&](std::uint64_t edges, const std::vector<Mask> & cols) {
            if (! best || edges > *best ||
                (edges == *best && detail::lex_less_columns(p.rows, cols, *best_cols))) {
                best = edges;
                best_cols = cols;
            }
        };
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            const auto & r = results[k];
            bool reached = remaining > 0;
            bool fits = reached && r.complete && r.nodes <= remaining;
            if (p.goal == Goal::feasible) {
                if (reached && r.found_at && *r.found_at <= remaining) {
                    out.nodes += *r.found_at;
                    out.complete = true;
                    out.columns = r.witness;
                    for (auto c : r.witness)
                        out.best_edges += static_cast<std::uint64_t>(std::popcount(c));
                    return out;
                }
                if (fits) {
                    out.nodes += r.nodes;
                    remaining -= r.nodes;
                    continue;
                }
                out.nodes += remaining;
                remaining = 0;
                complete = false;
                break;
            }

            if (fits) {
                out.nodes += r.nodes;
                remaining -= r.nodes;
                for (const auto & h : r.history)
                    offer(h.edges, h.columns);
                continue;
            }
            complete = false;
            open_bound = std::max(open_bound, tasks[k].viable ? tasks[k].root_bound : 0);
            if (reached) {
                for (const auto & h : r.history)
                    if (h.node <= remaining)
                        offer(h.edges, h.columns);
                out.nodes += remaining;
                remaining = 0;
            }
        }

        out.complete = complete;
        if (p.goal == Goal::max_edges) {
            out.best_edges = best.value_or(0);
            out.columns = best_cols;
            out.proven_upper = complete ? out.best_edges : std::max(out.best_edges, open_bound);
        }
        return out;
    }

} // namespace search
} // namespace bramsey
