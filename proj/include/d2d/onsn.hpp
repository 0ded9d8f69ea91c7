#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "d2d/rng.hpp"

namespace d2d {

using ContentId = long long;

// Content popularity state of one online subnetwork. counts[k] is the number
// of users that have selected content k so far; n_seen is how many users have
// made their selection. Fresh contents receive ids next_content_id,
// next_content_id + 1, ... and ids are never reused.
struct IbpState {
    double alpha = 8.0;
    long long n_seen = 0;
    std::map<ContentId, long long> counts;
    ContentId next_content_id = 0;
};

// One user's draw: the existing contents it picked plus how many brand new
// contents it introduces.
struct Selection {
    std::vector<ContentId> old_contents; // ascending ids
    long long n_new = 0;

    long long total() const { return static_cast<long long>(old_contents.size()) + n_new; }
};

// Draws the selection of user n_seen + 1 without touching the state: each
// existing content k is picked independently with probability counts[k] / n,
// and the number of new contents is Poisson(alpha / n). Requires alpha > 0.
Selection ibp_select(const IbpState& state, Rng& rng);

// Folds a selection back into the state: increments the picked counts,
// appends n_new fresh contents with count 1, and advances n_seen. Selections
// referencing unknown content ids are rejected.
IbpState update_prior(const IbpState& state, const Selection& selection);

// Expected number of distinct contents after n users: alpha * H(n).
double expected_library_size(double alpha, long long n_users);

// Writes the counts as "content_id,m_k" rows in ascending id order.
void write_counts_csv(const IbpState& state, std::ostream& out);

} // namespace d2d
