#include "d2d/offsn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>

#include "d2d/textio.hpp"

namespace d2d {

namespace {

ClosenessGraph build_graph_impl(const std::map<UserPair, ContactStats>& stats,
                                std::map<int, Vec2> positions,
                                std::set<int> users,
                                const XMinModel& x_min) {
    ClosenessGraph g;
    g.users = std::move(users);
    g.positions = std::move(positions);
    for (const auto& [pair, st] : stats) {
        double w = closeness(fit_gamma(st), x_min(pair));
        g.edges.emplace(pair, w);
    }
    return g;
}

} // namespace

ClosenessGraph build_graph(const std::map<UserPair, ContactStats>& stats,
                           const std::map<int, Vec2>& positions,
                           const XMinModel& x_min) {
    std::set<int> users;
    for (const auto& [id, pos] : positions) users.insert(id);
    for (const auto& [pair, st] : stats) {
        if (!users.count(pair.a))
            throw std::invalid_argument("build_graph: user " + std::to_string(pair.a) + " has no position");
        if (!users.count(pair.b))
            throw std::invalid_argument("build_graph: user " + std::to_string(pair.b) + " has no position");
    }
    return build_graph_impl(stats, positions, std::move(users), x_min);
}

ClosenessGraph build_graph(const std::map<UserPair, ContactStats>& stats, const XMinModel& x_min) {
    std::set<int> users;
    for (const auto& [pair, st] : stats) {
        users.insert(pair.a);
        users.insert(pair.b);
    }
    return build_graph_impl(stats, {}, std::move(users), x_min);
}

OffsnPartition partition(const ClosenessGraph& graph, double w_t) {
    if (!(w_t >= 0.0))
        throw std::invalid_argument("partition: threshold must be nonnegative");

    // Union-find over users; only edges at or above the threshold join sets.
    std::map<int, int> parent;
    for (int u : graph.users) parent[u] = u;

    std::function<int(int)> find = [&](int u) {
        while (parent[u] != u) {
            parent[u] = parent[parent[u]];
            u = parent[u];
        }
        return u;
    };

    for (const auto& [pair, w] : graph.edges)
        if (w >= w_t) parent[find(pair.a)] = find(pair.b);

    std::map<int, std::vector<int>> components; // keyed by root, members end up sorted
    for (int u : graph.users) components[find(u)].push_back(u);

    std::vector<std::vector<int>> groups;
    for (auto& [root, members] : components) {
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& l, const auto& r) { return l.front() < r.front(); });

    OffsnPartition part;
    part.threshold = w_t;
    for (auto& g : groups) {
        if (g.size() >= 2)
            part.offsns.push_back(std::move(g));
        else
            part.white_area.insert(g.front());
    }
    return part;
}

std::vector<int> frequent_users(const std::map<int, long long>& activity, double top_fraction) {
    if (activity.empty())
        throw std::invalid_argument("frequent_users: empty activity map");
    if (!(top_fraction > 0.0) || top_fraction > 1.0)
        throw std::invalid_argument("frequent_users: top_fraction must be in (0, 1]");

    std::vector<std::pair<int, long long>> ranked(activity.begin(), activity.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& l, const auto& r) {
        if (l.second != r.second) return l.second > r.second;
        return l.first < r.first;
    });

    auto take = static_cast<std::size_t>(
        std::ceil(top_fraction * static_cast<double>(ranked.size())));
    std::vector<int> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(ranked[i].first);
    return out;
}

std::optional<int> best_holder(const ClosenessGraph& graph,
                               int requester,
                               const std::set<int>& holders,
                               double d_max) {
    if (holders.count(requester))
        throw std::invalid_argument("best_holder: requester already holds the content");
    auto req_pos = graph.positions.find(requester);
    if (req_pos == graph.positions.end())
        throw std::invalid_argument("best_holder: requester has no position");

    std::optional<int> best;
    double best_w = -1.0;
    for (int h : holders) {
        auto w = graph.edge_weight(requester, h);
        if (!w) continue;
        auto pos = graph.positions.find(h);
        if (pos == graph.positions.end())
            throw std::invalid_argument("best_holder: holder " + std::to_string(h) + " has no position");
        if (distance(req_pos->second, pos->second) > d_max) continue;
        if (*w > best_w) { // set iteration is ascending, so ties keep the lowest id
            best_w = *w;
            best = h;
        }
    }
    return best;
}

std::map<int, Vec2> parse_positions(std::istream& in) {
    std::map<int, Vec2> out;
    std::string raw;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (first_content_line) {
            first_content_line = false;
            double probe;
            if (!fields.empty() && !parse_double(fields[0], probe)) continue; // header row
        }
        if (fields.size() != 3)
            throw ParseError(line_no, "expected 3 fields, got " + std::to_string(fields.size()));

        long long id;
        Vec2 pos;
        if (!parse_int(fields[0], id)) throw ParseError(line_no, "bad user_id: '" + std::string(fields[0]) + "'");
        if (!parse_double(fields[1], pos.x)) throw ParseError(line_no, "bad x_m: '" + std::string(fields[1]) + "'");
        if (!parse_double(fields[2], pos.y)) throw ParseError(line_no, "bad y_m: '" + std::string(fields[2]) + "'");
        if (!out.emplace(static_cast<int>(id), pos).second)
            throw ParseError(line_no, "duplicate user_id " + std::to_string(id));
    }
    return out;
}

} // namespace d2d
