#pragma once

#include "bmmn/decomposition.hpp"

#include <array>

namespace bmmn {

/// The four base networks of the completion algorithm: lower/upper sides of
/// horizontal 1-strips, right/left sides of vertical 1-strips. Degenerated
/// strips contribute their segment to both tags of their family.
enum class SideTag { H1, H2, V1, V2 };

constexpr std::array<SideTag, 4> kSideTags = {SideTag::H1, SideTag::H2, SideTag::V1, SideTag::V2};

const char* side_tag_name(SideTag tag);

struct SideNetwork {
  SideTag tag;
  Network net;
};

std::array<SideNetwork, 4> side_networks(const UnitBall& ball, const std::vector<Strip>& strips);

struct StaircaseDpResult {
  Rat cost;
  std::vector<LegalSegment> segments;
};

/// Optimal completion segments for one staircase given a fixed strip path
/// and the available base-strip side: the minimum-total-length grid
/// segments connecting every terminal of extended_terms (ordered as in the
/// staircase) into pi and the shelf.
StaircaseDpResult staircase_dp(const UnitBall& ball, const Decomposition& d, const Staircase& st,
                               const SwitchPath& pi, const LegalSegment& shelf,
                               const std::vector<Point>& extended_terms);

struct CompletionOptions {
  bool fast_dp = false;          // share path-independent DP states across candidates
  bool check_invariants = true;  // run the admissibility and accounting checks
};

struct Completion {
  SideTag base;
  Network added;  // the completion edges C, disjoint from the base network
  Rat total;      // exact union length of base and added
};

Completion complete(const UnitBall& ball, const Decomposition& d, SideTag tag,
                    const CompletionOptions& options = {});

struct DirStats {
  Rat lambda_h, lambda_v;
  std::array<Rat, 4> side_totals;
  SideTag chosen = SideTag::H1;
};

/// The factor-1.25 one-directional solver: completes all four side
/// networks and returns the shortest (ties resolved in tag order).
std::pair<Network, DirStats> solve_1dmmn(const UnitBall& ball, const std::vector<Point>& terminals,
                                         int k, const CompletionOptions& options = {});

}  // namespace bmmn
