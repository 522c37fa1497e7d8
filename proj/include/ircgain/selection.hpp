// SPDX-License-Identifier: Apache-2.0
//
// ircgain - closed-form antenna-gain analysis for interference rejection combiners
// Copyright (C) 2026 ircgain contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "ircgain/irc.hpp"

namespace ircgain {

/// Candidate antennas a receiver could still claim, each under a stable
/// integer id. Consumed ids stay in the pool, marked used.
class candidate_pool {
  public:
    struct entry {
        int id;
        antenna_row row;
    };

    candidate_pool() = default;

    static candidate_pool from_rows(std::vector<antenna_row> rows) {
        candidate_pool pool;
        int id = 0;
        for (antenna_row &r : rows) pool.add(id++, std::move(r));
        return pool;
    }

    void add(int id, antenna_row row) {
        for (const entry &e : entries_)
            if (e.id == id) throw invalid_parameter("candidate_pool: duplicate id");
        entries_.push_back({id, std::move(row)});
    }

    const std::vector<entry> &entries() const { return entries_; }
    const std::set<int> &used() const { return used_; }

    bool is_used(int id) const { return used_.count(id) > 0; }

    std::size_t unused_count() const { return entries_.size() - used_.size(); }

    const antenna_row &row_for(int id) const {
        for (const entry &e : entries_)
            if (e.id == id) return e.row;
        throw invalid_parameter("candidate_pool: unknown id");
    }

    void mark_used(int id) {
        row_for(id); // validates the id
        if (!used_.insert(id).second) throw invalid_parameter("candidate_pool: id already used");
    }

  private:
    std::vector<entry> entries_;
    std::set<int> used_;
};

struct ranked_candidate {
    int id;
    double sinr_gain;
};

/// One greedy pick: which antenna, its gain at pick time, and the SINR
/// after claiming it. The sinr_after values are non-decreasing because
/// every gain is nonnegative.
struct selection_trace {
    struct pick {
        int id;
        double sinr_gain;
        double sinr_after;
    };
    std::vector<pick> picks;
};

/// Scores every unused candidate by its closed-form gain against the given
/// state. Sorted by descending gain, ties broken by ascending id so the
/// ordering is deterministic.
inline std::vector<ranked_candidate> rank_candidates(const irc_state &state,
                                                     const candidate_pool &pool) {
    if (pool.unused_count() == 0) throw empty_pool("rank_candidates: no unused candidates");
    std::vector<ranked_candidate> ranked;
    ranked.reserve(pool.unused_count());
    for (const candidate_pool::entry &e : pool.entries()) {
        if (pool.is_used(e.id)) continue;
        ranked.push_back({e.id, gain_one_antenna(state, e.row).sinr_gain});
    }
    std::sort(ranked.begin(), ranked.end(), [](const ranked_candidate &a, const ranked_candidate &b) {
        if (a.sinr_gain != b.sinr_gain) return a.sinr_gain > b.sinr_gain;
        return a.id < b.id;
    });
    return ranked;
}

struct greedy_result {
    irc_state state;
    selection_trace trace;
};

/// Claims k antennas greedily, re-ranking after every pick since each
/// addition changes the cached inverse and with it every remaining gain.
/// Marks the chosen ids used in the pool.
inline greedy_result greedy_select(irc_state state, candidate_pool &pool, std::size_t k) {
    if (k > pool.unused_count()) {
        if (pool.unused_count() == 0) throw empty_pool("greedy_select: no unused candidates");
        throw insufficient_candidates("greedy_select: k exceeds unused pool size");
    }
    selection_trace trace;
    trace.picks.reserve(k);
    for (std::size_t round = 0; round < k; ++round) {
        const std::vector<ranked_candidate> ranked = rank_candidates(state, pool);
        const ranked_candidate &best = ranked.front();
        state = add_antenna(state, pool.row_for(best.id));
        pool.mark_used(best.id);
        trace.picks.push_back({best.id, best.sinr_gain, state.sinr});
    }
    return {std::move(state), std::move(trace)};
}

} // namespace ircgain
