#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "d2d/closeness.hpp"
#include "d2d/geometry.hpp"
#include "d2d/trace.hpp"

namespace d2d {

// Weighted proximity graph. Edge weights are pair closeness values in [0, 1].
// Positions may be empty when the graph is built from a trace alone; any
// operation that needs distances then refuses to run.
struct ClosenessGraph {
    std::set<int> users;
    std::map<UserPair, double> edges;
    std::map<int, Vec2> positions;

    bool has_edge(int a, int b) const { return edges.count(UserPair(a, b)) != 0; }

    std::optional<double> edge_weight(int a, int b) const {
        auto it = edges.find(UserPair(a, b));
        if (it == edges.end()) return std::nullopt;
        return it->second;
    }
};

// Result of thresholding the graph at w_t. Components of size >= 2 become
// device-to-device subnetworks; isolated users fall into the white area and
// are served by the base station alone. Subnetworks are ordered by their
// smallest member id and each member list is ascending, so the partition of
// a given graph is unique.
struct OffsnPartition {
    std::vector<std::vector<int>> offsns;
    std::set<int> white_area;
    double threshold = 0.0;
};

// Minimum transfer time for a given pair, fed to the closeness computation.
using XMinModel = std::function<double(const UserPair&)>;

// Builds the closeness graph from per-pair contact stats. Every user that
// appears in `stats` must have a position; extra positioned users become
// isolated vertices. Edge weight is closeness(fit_gamma(stats), x_min(pair)).
ClosenessGraph build_graph(const std::map<UserPair, ContactStats>& stats,
                           const std::map<int, Vec2>& positions,
                           const XMinModel& x_min);

// Position-free variant for offline fitting; users are inferred from stats.
ClosenessGraph build_graph(const std::map<UserPair, ContactStats>& stats,
                           const XMinModel& x_min);

// Connected components of the subgraph with edges of weight >= w_t.
// Requires w_t >= 0.
OffsnPartition partition(const ClosenessGraph& graph, double w_t);

// Users ranked by activity (descending, ties by ascending id), truncated to
// ceil(top_fraction * |users|). Requires a nonempty map and a fraction in
// (0, 1].
std::vector<int> frequent_users(const std::map<int, long long>& activity, double top_fraction);

// Among `holders`, picks the one with the highest closeness to `requester`
// that lies within d_max meters and shares a graph edge with it. Ties go to
// the lowest user id. Returns nullopt when no holder qualifies. The
// requester must not itself be a holder, and all users involved need
// positions.
std::optional<int> best_holder(const ClosenessGraph& graph,
                               int requester,
                               const std::set<int>& holders,
                               double d_max);

// Reads a user_id,x_m,y_m CSV (header optional, LF or CRLF). Duplicate ids
// and malformed rows raise ParseError with the line number.
std::map<int, Vec2> parse_positions(std::istream& in);

} // namespace d2d
