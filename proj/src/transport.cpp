#include "rwprune/transport.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "rwprune/error.hpp"

namespace rwprune {

void DiscreteMeasure::validate() const {
    if (support.size() != mass.size()) throw ContractViolation("measure support and mass differ in length");
    if (support.empty()) throw ContractViolation("measure has empty support");
    Rational total;
    for (const Rational& m : mass) {
        if (m <= Rational(0)) throw ContractViolation(fmt::format("non-positive mass {}", m.str()));
        total += m;
    }
    if (total != Rational(1)) throw ContractViolation(fmt::format("measure sums to {}, not 1", total.str()));
}

DiscreteMeasure DiscreteMeasure::uniform_neighbors(const UndirectedGraph& g, NodeId x) {
    DiscreteMeasure m;
    const auto nbrs = g.neighbors(x);
    if (nbrs.empty()) throw ContractViolation(fmt::format("node {} has no neighbors", x));
    const Rational share(1, static_cast<std::int64_t>(nbrs.size()));
    m.support.assign(nbrs.begin(), nbrs.end());
    m.mass.assign(nbrs.size(), share);
    return m;
}

CostMatrix CostMatrix::from_distances(const DistanceTable& d, const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu) {
    CostMatrix c(mu.support.size(), nu.support.size());
    for (std::size_t a = 0; a < c.rows; ++a) {
        for (std::size_t b = 0; b < c.cols; ++b) {
            const NodeId x = mu.support[a];
            const NodeId y = nu.support[b];
            c.at(a, b) = (x < d.size() && y < d.size() && d.reachable(x, y)) ? d(x, y) : kInfinite;
        }
    }
    return c;
}

Rational TransportPlan::cost(const CostMatrix& c) const {
    Rational total;
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            const Rational f = (*this)(a, b);
            if (f != Rational(0)) total += f * Rational(c(a, b));
        }
    }
    return total;
}

bool TransportPlan::feasible_for(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
    if (rows != mu.mass.size() || cols != nu.mass.size()) return false;
    for (std::size_t a = 0; a < rows; ++a) {
        Rational sum;
        for (std::size_t b = 0; b < cols; ++b) {
            if ((*this)(a, b) < Rational(0)) return false;
            sum += (*this)(a, b);
        }
        if (sum != mu.mass[a]) return false;
    }
    for (std::size_t b = 0; b < cols; ++b) {
        Rational sum;
        for (std::size_t a = 0; a < rows; ++a) sum += (*this)(a, b);
        if (sum != nu.mass[b]) return false;
    }
    return true;
}

std::int64_t common_scale(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    std::int64_t scale = 1;
    for (const auto* m : {&mu, &nu}) {
        for (const Rational& r : m->mass) scale = std::lcm(scale, r.den());
    }
    return scale;
}

namespace {

// Residual network for the bipartite transportation problem.
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, std::int64_t cap, std::int64_t cost) {
        adj_[from].push_back(arcs_.size());
        arcs_.push_back({to, cap, cost});
        adj_[to].push_back(arcs_.size());
        arcs_.push_back({from, 0, -cost});
    }

    std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

    // Pushes `demand` units from source to sink along successive cheapest
    // paths. Returns the total cost.
    std::int64_t run(std::size_t source, std::size_t sink, std::int64_t demand) {
        const std::size_t n = adj_.size();
        constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
        std::vector<std::int64_t> potential(n, 0);  // all arc costs start >= 0
        std::int64_t total_cost = 0;

        while (demand > 0) {
            std::vector<std::int64_t> dist(n, inf);
            std::vector<std::size_t> via(n, npos);
            std::vector<bool> done(n, false);
            dist[source] = 0;
            // Dense Dijkstra; node counts stay below ~70.
            for (;;) {
                std::size_t x = npos;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!done[i] && dist[i] < inf && (x == npos || dist[i] < dist[x])) x = i;
                }
                if (x == npos) break;
                done[x] = true;
                for (std::size_t a : adj_[x]) {
                    const Arc& arc = arcs_[a];
                    if (arc.cap <= 0) continue;
                    const std::int64_t reduced = arc.cost + potential[x] - potential[arc.to];
                    if (dist[x] + reduced < dist[arc.to]) {
                        dist[arc.to] = dist[x] + reduced;
                        via[arc.to] = a;
                    }
                }
            }
            if (dist[sink] >= inf) throw std::logic_error("transport network cannot route all mass");
            for (std::size_t i = 0; i < n; ++i) {
                if (dist[i] < inf) potential[i] += dist[i];
            }
            std::int64_t push = demand;
            for (std::size_t x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
                push = std::min(push, arcs_[via[x]].cap);
            }
            for (std::size_t x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
                arcs_[via[x]].cap -= push;
                arcs_[via[x] ^ 1].cap += push;
                total_cost += push * arcs_[via[x]].cost;
            }
            demand -= push;
        }
        return total_cost;
    }

private:
    struct Arc {
        std::size_t to;
        std::int64_t cap;
        std::int64_t cost;
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
};

} // namespace

TransportResult wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostMatrix& cost) {
    mu.validate();
    nu.validate();
    const std::size_t rows = mu.mass.size();
    const std::size_t cols = nu.mass.size();
    if (cost.rows != rows || cost.cols != cols) throw ContractViolation("cost matrix shape does not match measures");
    for (std::int64_t c : cost.cost) {
        if (c < 0) throw DisconnectedMeasuresError("measures in different components: infinite transport cost");
    }

    const std::int64_t scale = common_scale(mu, nu);
    auto units = [scale](const Rational& r) { return r.num() * (scale / r.den()); };

    const std::size_t source = rows + cols;
    const std::size_t sink = source + 1;
    MinCostFlow net(rows + cols + 2);
    for (std::size_t a = 0; a < rows; ++a) net.add_edge(source, a, units(mu.mass[a]), 0);
    for (std::size_t b = 0; b < cols; ++b) net.add_edge(rows + b, sink, units(nu.mass[b]), 0);
    std::vector<std::size_t> arc_of(rows * cols);
    std::size_t next_arc = 2 * (rows + cols);
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            arc_of[a * cols + b] = next_arc;
            next_arc += 2;
            net.add_edge(a, rows + b, scale, cost(a, b));
        }
    }

    const std::int64_t total = net.run(source, sink, scale);

    TransportResult result;
    result.value = Rational(total, scale);
    result.plan.rows = rows;
    result.plan.cols = cols;
    result.plan.flow.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        result.plan.flow.emplace_back(net.flow_on(arc_of[i]), scale);
    }
    return result;
}

} // namespace rwprune
