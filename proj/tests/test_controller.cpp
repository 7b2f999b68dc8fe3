#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "apf/controller.hpp"
#include "apf/targets.hpp"

using namespace apf;

namespace {

Snapshot snap(Light self, std::vector<SnapshotEntry> others) {
  Snapshot s;
  s.self_light = self;
  s.others = std::move(others);
  return s;
}

TargetPattern dummy_targets(int n) {
  std::vector<GridPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({i, i});
  return order_targets(pts);
}

}  // namespace

TEST(OrderTargets, SpecOrdering) {
  TargetPattern p = order_targets({{0, 2}, {3, 2}, {1, 0}});
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.at(0), (GridPoint{3, 2}));
  EXPECT_EQ(p.at(1), (GridPoint{0, 2}));
  EXPECT_EQ(p.at(2), (GridPoint{1, 0}));
}

TEST(OrderTargets, NormalizesToOrigin) {
  TargetPattern p = order_targets({{5, 5}});
  EXPECT_EQ(p.at(0), (GridPoint{0, 0}));
}

TEST(OrderTargets, HigherRowFirst) {
  TargetPattern p = order_targets({{0, 0}, {0, 1}});
  EXPECT_EQ(p.at(0), (GridPoint{0, 1}));
  EXPECT_EQ(p.at(1), (GridPoint{0, 0}));
}

TEST(OrderTargets, RejectsBadInput) {
  EXPECT_THROW(order_targets({}), std::invalid_argument);
  EXPECT_THROW(order_targets({{1, 1}, {1, 1}}), std::invalid_argument);
}

// --- phase 1 ---------------------------------------------------------------

TEST(Phase1, TerminalMarksAndMovesLeft) {
  Action a = phase1_step(snap(Light::Off, {{{0, -2}, Light::Off}, {{2, 1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Terminal1, Move::Left}));
}

TEST(Phase1, NonTerminalWaits) {
  Action a = phase1_step(
      snap(Light::Off, {{{0, -2}, Light::Off}, {{0, 2}, Light::Off}, {{1, 0}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase1, OccupiedLeftHalfBlocks) {
  Action a = phase1_step(snap(Light::Off, {{{-1, 3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase1, Leader1OnRightImmediateBlocks) {
  Action a = phase1_step(snap(Light::Off, {{{2, 1}, Light::Leader1}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase1, OffRobotOnMidlineOfTwoTerminal1Elects) {
  Action a = phase1_step(
      snap(Light::Off, {{{-2, 3}, Light::Terminal1}, {{-2, -3}, Light::Terminal1}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));

  Action off_axis = phase1_step(
      snap(Light::Off, {{{-2, 3}, Light::Terminal1}, {{-2, -1}, Light::Terminal1}}));
  EXPECT_EQ(off_axis, (Action{Light::Off, Move::Null}));
}

TEST(Phase1, PairSymmetricColumnTurnsSymmetric) {
  // Partner terminal1 at -4 puts K at y=-2; the right column mirrors across K.
  Action a = phase1_step(snap(Light::Terminal1, {{{0, -4}, Light::Terminal1},
                                                 {{3, -1}, Light::Off},
                                                 {{3, -3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Symmetric, Move::Null}));
}

TEST(Phase1, PairDominantHalfElects) {
  // Right column: one robot a half-step above K, one two slots below: the
  // upper lambda wins and self sits above K.
  Action a = phase1_step(snap(Light::Terminal1, {{{0, -4}, Light::Terminal1},
                                                 {{3, -1}, Light::Off},
                                                 {{3, -4}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase1, PairNonDominantWaits) {
  Action a = phase1_step(snap(Light::Terminal1, {{{0, -4}, Light::Terminal1},
                                                 {{3, -3}, Light::Off},
                                                 {{3, 0}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Terminal1, Move::Null}));
}

TEST(Phase1, RobotOnAxisPreemptsSymmetryCheck) {
  Action waiting = phase1_step(snap(Light::Terminal1, {{{0, -4}, Light::Terminal1},
                                                       {{3, -2}, Light::Off}}));
  EXPECT_EQ(waiting, (Action{Light::Terminal1, Move::Null}));

  Action demote = phase1_step(snap(Light::Terminal1, {{{0, -4}, Light::Terminal1},
                                                      {{3, -2}, Light::Leader1}}));
  EXPECT_EQ(demote, (Action{Light::Off, Move::Null}));
}

TEST(Phase1, PartnerSymmetricFollows) {
  Action a = phase1_step(snap(Light::Terminal1, {{{0, 4}, Light::Symmetric},
                                                 {{3, 1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Symmetric, Move::Null}));
}

TEST(Phase1, PartnerDemotedOrElectedMeansOff) {
  EXPECT_EQ(phase1_step(snap(Light::Terminal1, {{{0, 4}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase1_step(snap(Light::Terminal1, {{{0, 4}, Light::Off}})),
            (Action{Light::Off, Move::Null}));
}

TEST(Phase1, SingletonTerminal1WithAllOffRightElects) {
  EXPECT_EQ(phase1_step(snap(Light::Terminal1, {{{1, 2}, Light::Off}, {{1, -1}, Light::Off}})),
            (Action{Light::Leader1, Move::Null}));
  EXPECT_EQ(phase1_step(snap(Light::Terminal1, {})), (Action{Light::Leader1, Move::Null}));
  EXPECT_EQ(phase1_step(snap(Light::Terminal1, {{{1, 2}, Light::Terminal1}})),
            (Action{Light::Terminal1, Move::Null}));
}

TEST(Phase1, SymmetricWalkAwayFromPartner) {
  Action a = phase1_step(snap(Light::Symmetric, {{{0, -3}, Light::Symmetric},
                                                 {{2, 1}, Light::Off},
                                                 {{2, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Symmetric, Move::Up}));
}

TEST(Phase1, SymmetricBecomesDeciderWhenHalfClears) {
  Action a = phase1_step(snap(Light::Symmetric, {{{0, -3}, Light::Symmetric},
                                                 {{2, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Null}));
}

TEST(Phase1, SymmetricWaitsForPartnerLight) {
  Action a = phase1_step(snap(Light::Symmetric, {{{0, -3}, Light::Terminal1},
                                                 {{2, 1}, Light::Off},
                                                 {{2, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Symmetric, Move::Null}));
}

TEST(Phase1, SymmetricFollowsDeciderPartner) {
  Action a = phase1_step(snap(Light::Symmetric, {{{0, 5}, Light::Decider},
                                                 {{2, 1}, Light::Off},
                                                 {{2, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Symmetric, Move::Down}));
}

// --- phase 2 ---------------------------------------------------------------

TEST(Phase2, OffOnAxisOfDecidersElects) {
  Action a = phase2_step(snap(Light::Off, {{{-2, 2}, Light::Decider},
                                           {{-2, -2}, Light::Decider}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase2, OffNearestToAxisCalls) {
  // K doubled 3; self at distance 3, own-column neighbour at distance 5.
  Action a = phase2_step(snap(Light::Off, {{{-2, 4}, Light::Decider},
                                           {{-2, -1}, Light::Decider},
                                           {{0, 4}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Call, Move::Null}));
}

TEST(Phase2, OffFartherFromAxisWaitsUntilColumnCalls) {
  // K doubled -3; neighbour at distance 1 is closer than self at 3.
  Action a = phase2_step(snap(Light::Off, {{{-2, 1}, Light::Decider},
                                           {{-2, -4}, Light::Decider},
                                           {{0, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
  Action joined = phase2_step(snap(Light::Off, {{{-2, 1}, Light::Decider},
                                                {{-2, -4}, Light::Decider},
                                                {{0, -2}, Light::Call}}));
  EXPECT_EQ(joined, (Action{Light::Call, Move::Null}));
}

TEST(Phase2, OffTerminalDominantElectsWhenRightAsymmetric) {
  // K doubled -2; right column has the upper lambda dominant; self above K
  // and terminal on its column.
  Action a = phase2_step(snap(Light::Off, {{{-1, 2}, Light::Decider},
                                           {{-1, -4}, Light::Decider},
                                           {{0, -2}, Light::Off},
                                           {{2, 0}, Light::Off},
                                           {{2, -3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase2, VisibleAxisRobotPreemptsColumn) {
  Action a = phase2_step(snap(Light::Off, {{{-1, 2}, Light::Decider},
                                           {{-1, -4}, Light::Decider},
                                           {{0, -1}, Light::Off},
                                           {{2, 0}, Light::Off},
                                           {{2, -3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase2, DeciderMovesRightWhenColumnAllCall) {
  Action a = phase2_step(snap(Light::Decider, {{{0, 4}, Light::Decider},
                                               {{2, 1}, Light::Call},
                                               {{2, 3}, Light::Call}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Right}));
}

TEST(Phase2, DeciderWaitsOnPartialCalls) {
  Action a = phase2_step(snap(Light::Decider, {{{0, 4}, Light::Decider},
                                               {{2, 1}, Light::Call},
                                               {{2, 3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Null}));
}

TEST(Phase2, DeciderDominantElectsOnAsymmetry) {
  Action a = phase2_step(snap(Light::Decider, {{{0, 4}, Light::Decider},
                                               {{2, 1}, Light::Off},
                                               {{2, 4}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase2, DeciderWaitsWhenAxisCellOccupied) {
  Action a = phase2_step(snap(Light::Decider, {{{0, 4}, Light::Decider},
                                               {{2, 2}, Light::Off},
                                               {{2, 1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Null}));
}

TEST(Phase2, DeciderFollowsPartnerSeenOnRight) {
  Action a = phase2_step(snap(Light::Decider, {{{1, 3}, Light::Decider}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Right}));
}

TEST(Phase2, DeciderLaggingPartnerBlocksCallAdvance) {
  Action a = phase2_step(snap(Light::Decider, {{{-1, 3}, Light::Decider},
                                               {{0, 2}, Light::Call},
                                               {{2, 1}, Light::Call}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Null}));
}

TEST(Phase2, DeciderAdvancesThroughOwnCallColumn) {
  Action a = phase2_step(snap(Light::Decider, {{{0, 2}, Light::Call},
                                               {{2, 1}, Light::Call},
                                               {{2, 5}, Light::Call}}));
  EXPECT_EQ(a, (Action{Light::Decider, Move::Right}));
}

TEST(Phase2, DeciderDemotesOnVisibleWinner) {
  EXPECT_EQ(phase2_step(snap(Light::Decider, {{{2, 1}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase2_step(snap(Light::Decider, {{{0, 2}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  // The winner may already have walked into the left open half, or gone all
  // the way to leader; the decider is obsolete either way.
  EXPECT_EQ(phase2_step(snap(Light::Decider, {{{-1, -9}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase2_step(snap(Light::Decider, {{{-2, 3}, Light::Leader}})),
            (Action{Light::Off, Move::Null}));
}

TEST(Phase2, CallDemotesOnVisibleWinner) {
  EXPECT_EQ(phase2_step(snap(Light::Call, {{{1, 4}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase2_step(snap(Light::Call, {{{-3, 1}, Light::Leader1}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase2_step(snap(Light::Call, {{{0, 6}, Light::Leader}})),
            (Action{Light::Off, Move::Null}));
  EXPECT_EQ(phase2_step(snap(Light::Call, {{{1, 4}, Light::Off}})),
            (Action{Light::Call, Move::Null}));
}

TEST(Phase2, Leader1CornerWalkLeft) {
  Action a = phase2_step(snap(Light::Leader1, {{{-1, -2}, Light::Off},
                                               {{1, -3}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Left}));
}

TEST(Phase2, Leader1TurnsLeaderAtCorner) {
  Action a = phase2_step(snap(Light::Leader1, {{{1, -3}, Light::Off},
                                               {{2, -1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader, Move::Null}));
}

TEST(Phase2, Leader1NotTerminalMovesLeft) {
  Action a = phase2_step(snap(Light::Leader1, {{{0, 2}, Light::Off},
                                               {{0, -2}, Light::Off},
                                               {{1, 1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Left}));
}

TEST(Phase2, Leader1TerminalWalksAwayFromColumnMate) {
  Action a = phase2_step(snap(Light::Leader1, {{{0, -2}, Light::Off},
                                               {{1, 1}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Up}));
}

TEST(Phase2, Leader1SingletonWalksPrivateUp) {
  Action a = phase2_step(snap(Light::Leader1, {{{1, 2}, Light::Off},
                                               {{1, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Up}));
}

TEST(Phase2, Leader1GuardBlocksOnLitLeftImmediate) {
  Action a = phase2_step(snap(Light::Leader1, {{{-2, 1}, Light::Call},
                                               {{1, -2}, Light::Off}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase2, Leader1GuardNeedsOccupiedLeftImmediateOrEmptyLeft) {
  // Fresh election with a still-lit partner column to the right: the empty
  // L_I must not satisfy the guard vacuously.
  Action a = phase2_step(snap(Light::Leader1, {{{1, -6}, Light::Terminal1}}));
  EXPECT_EQ(a, (Action{Light::Leader1, Move::Null}));
}

TEST(Phase2, Leader1DemotesOnLeftLeader1) {
  Action a = phase2_step(snap(Light::Leader1, {{{-1, 6}, Light::Leader1}}));
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase2, SoleRobotBecomesLeader) {
  Action a = phase2_step(snap(Light::Leader1, {}));
  EXPECT_EQ(a, (Action{Light::Leader, Move::Null}));
}

// --- phase 3 ---------------------------------------------------------------

namespace {
// Snapshot whose agreed frame (orient +1, leader at (0,-1)) puts self at
// `self_a`, with the other entries given in agreed coordinates.
Snapshot agreed_snap(Light self, GridPoint self_a,
                     std::vector<std::pair<GridPoint, Light>> agreed_others) {
  std::vector<SnapshotEntry> others;
  others.push_back({{0 - self_a.x, -1 - self_a.y}, Light::Leader});
  for (const auto& [p, l] : agreed_others)
    others.push_back({{p.x - self_a.x, p.y - self_a.y}, l});
  return snap(self, std::move(others));
}
}  // namespace

TEST(AgreedFrame, SpecExamples) {
  auto f = agreed_frame(snap(Light::Off, {{{-2, -3}, Light::Leader}}));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->orient, +1);
  EXPECT_EQ(f->to_agreed({-2, -3}), (GridPoint{0, -1}));
  EXPECT_EQ(f->to_agreed({0, 0}), (GridPoint{2, 2}));

  auto g = agreed_frame(snap(Light::Off, {{{1, 4}, Light::Leader}}));
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->orient, -1);
  EXPECT_EQ(g->to_agreed({1, 4}), (GridPoint{0, -1}));
  EXPECT_EQ(g->to_agreed({0, 0}), (GridPoint{-1, 3}));

  EXPECT_FALSE(agreed_frame(snap(Light::Off, {{{1, 1}, Light::Done}})).has_value());

  auto h = agreed_frame(snap(Light::Leader, {{{2, 3}, Light::Off}}));
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(h->orient, +1);
  EXPECT_EQ(h->to_agreed({0, 0}), (GridPoint{0, -1}));
}

TEST(Phase3, LiftFromLineToStagingRow) {
  TargetPattern t = dummy_targets(4);
  Action a = phase3_step(agreed_snap(Light::Off, {1, -1}, {{{2, -1}, Light::Off}}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Up}));
}

TEST(Phase3, LiftWaitsForOffAbove) {
  TargetPattern t = dummy_targets(4);
  Action a = phase3_step(
      agreed_snap(Light::Off, {1, -1}, {{{2, -1}, Light::Off}, {{2, 4}, Light::Off}}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
  Action b = phase3_step(
      agreed_snap(Light::Off, {1, -1}, {{{2, -1}, Light::Off}, {{2, 4}, Light::Done}}), t);
  EXPECT_EQ(b, (Action{Light::Off, Move::Up}));
}

TEST(Phase3, LineMoveDescends) {
  TargetPattern t = dummy_targets(5);
  Action a = phase3_step(agreed_snap(Light::Off, {3, 4},
                                     {{{1, -1}, Light::Off}, {{2, -1}, Light::Off}}),
                         t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Down}));
}

TEST(Phase3, LineMoveWalksAlongStagingRow) {
  TargetPattern t = dummy_targets(5);
  Action a = phase3_step(agreed_snap(Light::Off, {5, 0},
                                     {{{1, -1}, Light::Off}, {{2, -1}, Light::Off}}),
                         t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Left}));
  Action b = phase3_step(agreed_snap(Light::Off, {3, 0},
                                     {{{1, -1}, Light::Off}, {{2, -1}, Light::Off}}),
                         t);
  EXPECT_EQ(b, (Action{Light::Off, Move::Down}));
}

TEST(Phase3, FirstRobotJoinsEmptyLine) {
  TargetPattern t = dummy_targets(4);
  Action a = phase3_step(agreed_snap(Light::Off, {2, 3}, {}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Down}));
  Action b = phase3_step(agreed_snap(Light::Off, {1, 0}, {}), t);
  EXPECT_EQ(b, (Action{Light::Off, Move::Down}));
}

TEST(Phase3, StripMustBeClear) {
  TargetPattern t = dummy_targets(4);
  Action a = phase3_step(agreed_snap(Light::Off, {2, 3}, {{{4, 1}, Light::Off}}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase3, LeftmostOnRowRequired) {
  TargetPattern t = dummy_targets(4);
  Action a = phase3_step(agreed_snap(Light::Off, {2, 3}, {{{1, 3}, Light::Off}}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
}

TEST(Phase3, DispatchAfterLift) {
  // Line remnant (4,-1),(5,-1) with n = 6: TargetMove(2) climbs toward the
  // staging row below t_2.
  std::vector<GridPoint> pts{{0, 9}, {1, 7}, {2, 5}, {3, 3}, {4, 1}, {5, 0}};
  TargetPattern t = order_targets(pts);
  ASSERT_EQ(t.at(2), (GridPoint{2, 5}));
  Action a = phase3_step(agreed_snap(Light::Off, {3, 0},
                                     {{{4, -1}, Light::Off},
                                      {{5, -1}, Light::Off},
                                      {{0, 10}, Light::Done},
                                      {{1, 8}, Light::Done}}),
                         t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Up}));
}

TEST(Phase3, DoneAtPenultimateTarget) {
  std::vector<GridPoint> pts{{0, 2}, {1, 1}, {2, 0}};
  TargetPattern t = order_targets(pts);
  ASSERT_EQ(t.at(1), (GridPoint{1, 1}));
  Action a = phase3_step(agreed_snap(Light::Off, {1, 2}, {{{0, 3}, Light::Done}}), t);
  EXPECT_EQ(a, (Action{Light::Done, Move::Null}));
}

TEST(Phase3, TwoRobotPatternSkipsTheLine) {
  std::vector<GridPoint> pts{{0, 0}, {1, 1}};
  TargetPattern t = order_targets(pts);
  Action a = phase3_step(agreed_snap(Light::Off, {3, 0}, {}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Up}));
  Action b = phase3_step(agreed_snap(Light::Off, {3, 1}, {}), t);
  EXPECT_EQ(b, (Action{Light::Off, Move::Left}));
  Action c = phase3_step(agreed_snap(Light::Off, {1, 1}, {}), t);
  EXPECT_EQ(c, (Action{Light::Off, Move::Up}));
  Action d = phase3_step(agreed_snap(Light::Off, {1, 2}, {}), t);
  EXPECT_EQ(d, (Action{Light::Done, Move::Null}));
}

TEST(Phase3, LeaderWaitsForOffLights) {
  TargetPattern t = dummy_targets(3);
  Action a = phase3_step(snap(Light::Leader, {{{2, 1}, Light::Off}, {{3, 2}, Light::Done}}), t);
  EXPECT_EQ(a, (Action{Light::Leader, Move::Null}));
}

TEST(Phase3, LeaderNavigatesByDoneAnchor) {
  std::vector<GridPoint> pts{{0, 1}, {1, 1}, {0, 0}};
  TargetPattern t = order_targets(pts);  // t_0=(1,1) t_1=(0,1) t_2=(0,0)
  // Leader at agreed (0,-1); dones on embedded t_0=(1,2), t_1=(0,2).
  Action a = phase3_step(snap(Light::Leader, {{{1, 3}, Light::Done}, {{0, 3}, Light::Done}}), t);
  EXPECT_EQ(a, (Action{Light::Leader, Move::Up}));
  // After one step up the anchor keeps the frame stable: climb again into
  // the target row.
  Action b = phase3_step(snap(Light::Leader, {{{1, 2}, Light::Done}, {{0, 2}, Light::Done}}), t);
  EXPECT_EQ(b, (Action{Light::Leader, Move::Up}));
}

TEST(Phase3, LeaderAloneDonesInPlace) {
  TargetPattern t = dummy_targets(1);
  Action a = phase3_step(snap(Light::Leader, {}), t);
  EXPECT_EQ(a, (Action{Light::Done, Move::Null}));
}

TEST(Phase3, DoneNeverActs) {
  TargetPattern t = dummy_targets(3);
  Action a = compute(snap(Light::Done, {{{1, 1}, Light::Off}}), t);
  EXPECT_EQ(a, (Action{Light::Done, Move::Null}));
}

// --- exposed LineMove / TargetMove surfaces --------------------------------

TEST(LineMoveOp, SpecExamples) {
  auto at = [](GridPoint self_a) {
    return snap(Light::Off, {{{0 - self_a.x, -1 - self_a.y}, Light::Leader}});
  };
  EXPECT_EQ(line_move(2, at({5, 3})), (Action{Light::Off, Move::Down}));
  EXPECT_EQ(line_move(2, at({5, 0})), (Action{Light::Off, Move::Left}));
  EXPECT_EQ(line_move(2, at({2, 0})), (Action{Light::Off, Move::Down}));
}

TEST(TargetMoveOp, SpecExamples) {
  TargetPattern t = order_targets({{0, 0}, {4, 6}, {9, 9}, {5, 6}});
  ASSERT_EQ(t.at(2), (GridPoint{4, 6}));
  auto at = [](GridPoint self_a) {
    return snap(Light::Off, {{{0 - self_a.x, -1 - self_a.y}, Light::Leader}});
  };
  EXPECT_EQ(target_move(2, at({1, 0}), t), (Action{Light::Off, Move::Up}));
  EXPECT_EQ(target_move(2, at({1, 5}), t), (Action{Light::Off, Move::Right}));
  EXPECT_EQ(target_move(2, at({4, 5}), t), (Action{Light::Off, Move::Up}));
}

// --- dispatch and whole-function properties --------------------------------

TEST(Dispatch, SelfLightRouting) {
  TargetPattern t = dummy_targets(2);
  // terminal1 runs its phase-1 demotion branch even with leader1 in sight.
  Action a = compute(snap(Light::Terminal1, {{{0, 3}, Light::Leader1}}), t);
  EXPECT_EQ(a, (Action{Light::Off, Move::Null}));
  // symmetric with a decider partner still walks.
  Action b = compute(snap(Light::Symmetric, {{{0, -3}, Light::Decider},
                                             {{2, 1}, Light::Off},
                                             {{2, -2}, Light::Off}}),
                     t);
  EXPECT_EQ(b, (Action{Light::Symmetric, Move::Up}));
  // off robot with visible deciders runs phase 2.
  Action c = compute(snap(Light::Off, {{{-1, 1}, Light::Decider},
                                       {{-1, -1}, Light::Decider}}),
                     t);
  EXPECT_EQ(c, (Action{Light::Leader1, Move::Null}));
  // off robot with a visible leader runs phase 3 even if a call lingers.
  Action d = compute(snap(Light::Off, {{{-1, -1}, Light::Leader},
                                       {{3, 0}, Light::Call}}),
                     t);
  EXPECT_EQ(d.new_light, Light::Off);
}

TEST(Compute, PureAndOrderBlind) {
  std::mt19937 rng(97);
  TargetPattern t = dummy_targets(4);
  std::vector<SnapshotEntry> others{{{0, -4}, Light::Terminal1},
                                    {{3, -1}, Light::Off},
                                    {{3, -4}, Light::Off},
                                    {{5, 2}, Light::Off}};
  Action first = compute(snap(Light::Terminal1, others), t);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(others.begin(), others.end(), rng);
    EXPECT_EQ(compute(snap(Light::Terminal1, others), t), first);
  }
}

TEST(Compute, TotalOnArbitrarySnapshots) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int n_targets : {1, 2, 5}) {
    TargetPattern t = dummy_targets(n_targets);
    for (int trial = 0; trial < 2000; ++trial) {
      std::set<GridPoint> pos;
      int n = int(rng() % 6);
      while (int(pos.size()) < n) {
        GridPoint p{coord(rng), coord(rng)};
        if (p != GridPoint{0, 0}) pos.insert(p);
      }
      std::vector<SnapshotEntry> others;
      for (const GridPoint& p : pos) others.push_back({p, kAllLights[rng() % 8]});
      Light self = kAllLights[rng() % 8];
      Action a = compute(snap(self, others), t);
      EXPECT_LE(int(a.move), int(Move::Right));
      EXPECT_LE(int(a.new_light), int(Light::Done));
    }
  }
}
