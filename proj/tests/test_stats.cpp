#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ctrlseg/stats/chi_square.hpp"
#include "ctrlseg/stats/incomplete_gamma.hpp"
#include "ctrlseg/stats/metrics.hpp"
#include "figure_corpus.hpp"
#include "support.hpp"

using namespace ctrlseg;
using ctrlseg::stats::chi_square;
using ctrlseg::stats::ChiSquareOptions;
using ctrlseg::stats::ContingencyTable;
using ctrlseg::testing::make_dialogue;
using ctrlseg::testing::shift_mix;
using ctrlseg::testing::shift_sequence_steps;
using ctrlseg::testing::Step;

namespace {

using enum UtteranceType;

// Pearson's statistic summed directly in extended precision.
long double pearson_oracle(const std::vector<std::vector<double>>& t) {
  const std::size_t r = t.size(), c = t[0].size();
  std::vector<long double> rows(r, 0), cols(c, 0);
  long double n = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      rows[i] += t[i][j];
      cols[j] += t[i][j];
      n += t[i][j];
    }
  long double sum = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const long double e = rows[i] * cols[j] / n;
      sum += (t[i][j] - e) * (t[i][j] - e) / e;
    }
  return sum;
}

std::vector<std::vector<double>> random_table(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> cell(0, 60);
  std::vector<std::vector<double>> t(r, std::vector<double>(c));
  for (auto& row : t)
    for (auto& v : row) v = cell(rng);
  // Keep every marginal positive.
  for (std::size_t i = 0; i < r; ++i) t[i][i % c] += 1;
  for (std::size_t j = 0; j < c; ++j) t[j % r][j] += 1;
  return t;
}

Analysis analyze_steps(const std::vector<Step>& steps, const std::string& id = "d") {
  return analyze(make_dialogue(steps, id));
}

}  // namespace

TEST(ChiSquare, MatchesDirectPearsonOracleOnRandomTables) {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 100; ++k) {
    const std::size_t r = 2 + rng() % 4, c = 2 + rng() % 4;
    auto t = random_table(rng, r, c);
    auto res = chi_square(ContingencyTable(t));
    EXPECT_NEAR(res.statistic, static_cast<double>(pearson_oracle(t)), 1e-9) << "table " << k;
    EXPECT_EQ(res.degrees_of_freedom, (r - 1) * (c - 1));
    EXPECT_NEAR(res.p_value, boost::math::gamma_q((r - 1) * (c - 1) / 2.0, res.statistic / 2.0), 1e-10);
    EXPECT_EQ(res.significant, res.p_value < 0.05);
  }
}

TEST(ChiSquare, IdenticalRowsGiveZeroAndPOne) {
  auto res = chi_square(ContingencyTable({{10, 20}, {10, 20}}));
  EXPECT_DOUBLE_EQ(res.statistic, 0.0);
  EXPECT_DOUBLE_EQ(res.p_value, 1.0);
  EXPECT_FALSE(res.significant);
}

TEST(ChiSquare, PerfectAssociationTwoByTwo) {
  auto res = chi_square(ContingencyTable({{5, 0}, {0, 5}}));
  EXPECT_EQ(res.degrees_of_freedom, 1u);
  EXPECT_NEAR(res.statistic, 10.0, 1e-12);
  EXPECT_EQ(res.low_expected_cells, 4u);
  EXPECT_TRUE(res.significant);
}

TEST(ChiSquare, FinanceCollapsedTable) {
  // Figure 1 summed over anaphor classes: shift type x {X, NX}.
  std::vector<std::vector<double>> rows{{21, 160}, {8, 47}, {17, 47}};
  auto res = chi_square(ContingencyTable(rows));
  EXPECT_NEAR(res.statistic, static_cast<double>(pearson_oracle(rows)), 1e-9);
  EXPECT_EQ(res.degrees_of_freedom, 2u);

  DistributionTable t;
  t.by_shift = ctrlseg::testing::kFinanceCells;
  ContingencyTable collapsed = crossing_by_shift(t);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(collapsed.at(i, j), rows[i][j]);
}

TEST(ChiSquare, StatisticZeroIffProportional) {
  EXPECT_NEAR(chi_square(ContingencyTable({{2, 4, 6}, {3, 6, 9}})).statistic, 0.0, 1e-12);
  EXPECT_GT(chi_square(ContingencyTable({{2, 4, 6}, {3, 6, 10}})).statistic, 0.0);
}

TEST(ChiSquare, InvariantUnderRowAndColumnPermutation) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 50; ++k) {
    const std::size_t r = 2 + rng() % 3, c = 2 + rng() % 3;
    auto t = random_table(rng, r, c);
    const double base = chi_square(ContingencyTable(t)).statistic;
    auto p = t;
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::size_t> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& row : p) {
      auto copy = row;
      for (std::size_t j = 0; j < c; ++j) row[j] = copy[perm[j]];
    }
    EXPECT_NEAR(chi_square(ContingencyTable(p)).statistic, base, 1e-9);
    std::vector<std::vector<double>> tr(c, std::vector<double>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) tr[j][i] = t[i][j];
    EXPECT_NEAR(chi_square(ContingencyTable(tr)).statistic, base, 1e-9);
  }
}

TEST(ChiSquare, PValueMonotoneInStatisticForFixedDf) {
  std::mt19937_64 rng(7);
  for (std::size_t df : {1u, 2u, 3u, 4u, 6u, 9u}) {
    std::vector<double> stats;
    std::uniform_real_distribution<double> u(0.0, 60.0);
    for (int k = 0; k < 400; ++k) stats.push_back(u(rng));
    std::sort(stats.begin(), stats.end());
    double prev = 1.0;
    for (double s : stats) {
      double p = stats::chi_square_upper_tail(s, static_cast<double>(df));
      EXPECT_LE(p, prev + 1e-15) << "df " << df << " stat " << s;
      EXPECT_GE(p, 0.0);
      prev = p;
    }
  }
}

TEST(ChiSquare, PValueMonotoneOverRandomTablesOfEqualShape) {
  std::mt19937_64 rng(17);
  std::vector<std::pair<double, double>> results;
  for (int k = 0; k < 200; ++k) {
    auto res = chi_square(ContingencyTable(random_table(rng, 3, 3)));
    results.emplace_back(res.statistic, res.p_value);
  }
  std::sort(results.begin(), results.end());
  for (std::size_t k = 1; k < results.size(); ++k) EXPECT_LE(results[k].second, results[k - 1].second + 1e-15);
}

TEST(IncompleteGamma, MatchesBoostAcrossRegimes) {
  for (double a : {0.5, 1.0, 1.5, 2.0, 4.5, 10.0, 37.5}) {
    for (double x : {1e-6, 0.01, 0.3, 1.0, 2.5, 5.0, 10.0, 30.0, 80.0, 200.0}) {
      EXPECT_NEAR(stats::gamma_q(a, x), boost::math::gamma_q(a, x), 1e-10) << a << " " << x;
      EXPECT_NEAR(stats::gamma_p(a, x), boost::math::gamma_p(a, x), 1e-10) << a << " " << x;
    }
  }
  EXPECT_THROW(stats::gamma_q(0.0, 1.0), std::domain_error);
  EXPECT_THROW(stats::gamma_q(1.0, -1.0), std::domain_error);
}

TEST(ChiSquare, Errors) {
  EXPECT_THROW(chi_square(ContingencyTable({{1, 2}})), AnalysisError);
  EXPECT_THROW(chi_square(ContingencyTable({{1, 2}, {0, 0}})), AnalysisError);
  EXPECT_THROW(chi_square(ContingencyTable({{1, 0}, {2, 0}})), AnalysisError);
  EXPECT_THROW(chi_square(ContingencyTable({{1, -2}, {3, 4}})), AnalysisError);
  EXPECT_THROW(chi_square(ContingencyTable({{1, 2}, {3, 4}}), {1.5}), AnalysisError);
  EXPECT_THROW(ContingencyTable({{1, 2}, {3}}), Error);
  ChiSquareOptions strict;
  strict.strict = true;
  EXPECT_THROW(chi_square(ContingencyTable({{1.5, 2}, {3, 4}}), strict), AnalysisError);
  EXPECT_NO_THROW(chi_square(ContingencyTable({{1.5, 2}, {3, 4}})));
}

TEST(ChiSquare, YatesCorrectionOnTwoByTwoOnly) {
  ChiSquareOptions y;
  y.yates = true;
  auto res = chi_square(ContingencyTable({{10, 20}, {30, 40}}), y);
  EXPECT_TRUE(res.yates_applied);
  // n (|ad - bc| - n/2)^2 / (r1 r2 c1 c2)
  const double expected = 100.0 * std::pow(200.0 - 50.0, 2) / (30.0 * 70.0 * 40.0 * 60.0);
  EXPECT_NEAR(res.statistic, expected, 1e-12);
  EXPECT_LT(res.statistic, chi_square(ContingencyTable({{10, 20}, {30, 40}})).statistic);
  auto big = chi_square(ContingencyTable({{10, 20, 5}, {30, 40, 5}}), y);
  EXPECT_FALSE(big.yates_applied);
}

TEST(ChiSquare, PruneEmptyDropsZeroLines) {
  ContingencyTable t({{3, 0, 4}, {0, 0, 0}, {2, 0, 7}});
  t.row_labels = {"a", "b", "c"};
  t.col_labels = {"x", "y", "z"};
  std::vector<std::string> dropped;
  ContingencyTable p = stats::prune_empty(t, &dropped);
  EXPECT_EQ(p.rows(), 2u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_EQ(p.row_labels, (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(p.col_labels, (std::vector<std::string>{"x", "z"}));
  EXPECT_EQ(dropped.size(), 2u);
  EXPECT_EQ(p.at(1, 1), 7.0);
}

TEST(Metrics, TurnsPerSegment) {
  // Four flat segments of 8, 8, 7 and 7 body turns, joined by abdications.
  std::vector<Step> steps;
  const std::array<std::size_t, 4> lengths{8, 8, 7, 7};
  for (std::size_t s = 0; s < 4; ++s) {
    const std::string who = s % 2 ? "B" : "A";
    for (std::size_t k = 0; k + 1 < lengths[s]; ++k) steps.push_back({who, assertion});
    steps.push_back({who, s == 3 ? assertion : prompt});
  }
  Dialogue d = make_dialogue(steps);
  // An opening and a closing turn that must not count.
  Turn open = d.turns.front();
  open.id = "t0";
  open.phase = Phase::opening;
  open.utterances[0].id = "u0";
  d.turns.insert(d.turns.begin(), open);
  Turn close = d.turns.back();
  close.id = "t99";
  close.phase = Phase::closing;
  close.utterances[0].id = "u99";
  d.turns.push_back(close);

  std::vector<Analysis> corpus{analyze(d)};
  CorpusMetrics m = corpus_metrics(corpus);
  EXPECT_EQ(m.counted_turns, 30u);
  EXPECT_EQ(m.segments, 4u);
  EXPECT_DOUBLE_EQ(*m.turns_per_segment, 7.5);
  EXPECT_EQ(m.abdications, 3u);
  EXPECT_DOUBLE_EQ(*m.abdication_pct, 100.0);

  MetricsOptions with;
  with.include_openings = true;
  CorpusMetrics all = corpus_metrics(corpus, with);
  EXPECT_EQ(all.counted_turns, 32u);
  EXPECT_DOUBLE_EQ(*all.turns_per_segment, 8.0);
}

TEST(Metrics, OpeningOnlyStretchDoesNotCountAsSegment) {
  Dialogue d = make_dialogue({{"A", assertion}, {"A", prompt}, {"B", assertion}, {"B", assertion}});
  d.turns[0].phase = Phase::opening;
  d.turns[1].phase = Phase::opening;
  std::vector<Analysis> corpus{analyze(d)};
  CorpusMetrics m = corpus_metrics(corpus);
  EXPECT_EQ(m.counted_turns, 2u);
  EXPECT_EQ(m.segments, 1u);
  EXPECT_DOUBLE_EQ(*m.turns_per_segment, 2.0);
}

TEST(Metrics, ExpertControlNinetyOnePercent) {
  // Task-oriented profile: the expert (A) holds control for 91 of 100 body
  // turns; the client's prompts leave control with A.
  std::vector<Step> steps;
  for (int k = 0; k < 45; ++k) {
    steps.push_back({"A", command});
    steps.push_back({"B", prompt});
  }
  steps.push_back({"A", prompt});
  for (int k = 0; k < 9; ++k) steps.push_back({"B", assertion});
  Dialogue d = make_dialogue(steps);
  d.kind = DialogueKind::task_oriented;
  std::vector<Analysis> corpus{analyze(d)};
  CorpusMetrics m = corpus_metrics(corpus);
  EXPECT_EQ(m.counted_turns, 100u);
  EXPECT_DOUBLE_EQ(*m.expert_control_pct, 91.0);
}

TEST(Metrics, MajorityControllerWithTiesToSpeaker) {
  Dialogue d = make_dialogue({{"A", assertion}});
  Turn t;
  t.id = "t2";
  t.speaker = "B";
  for (auto [id, type] : {std::pair{"u2", prompt}, std::pair{"u3", assertion}}) {
    Utterance u;
    u.id = id;
    u.text = "x";
    u.type = type;
    u.response = Flag::no;
    u.redundant = Flag::no;
    t.utterances.push_back(u);
  }
  d.turns.push_back(t);
  // Turn 2: one A-controlled prompt, one B assertion -> tie -> speaker B.
  std::vector<Analysis> corpus{analyze(d)};
  EXPECT_DOUBLE_EQ(*corpus_metrics(corpus).expert_control_pct, 50.0);
  // A further A-controlled prompt in the same turn breaks the tie for A.
  Utterance extra = d.turns[1].utterances[0];
  extra.id = "u2b";
  d.turns[1].utterances.insert(d.turns[1].utterances.begin(), extra);
  corpus = {analyze(d)};
  EXPECT_DOUBLE_EQ(*corpus_metrics(corpus).expert_control_pct, 100.0);
}

TEST(Metrics, ShiftPercentages) {
  using enum ShiftType;
  std::vector<Analysis> corpus{analyze_steps(shift_sequence_steps({abdication, abdication, summary, interruption}))};
  CorpusMetrics m = corpus_metrics(corpus);
  ASSERT_EQ(m.shifts, 4u);
  EXPECT_DOUBLE_EQ(*m.abdication_pct, 50.0);
  EXPECT_DOUBLE_EQ(*m.summary_pct, 25.0);
  EXPECT_DOUBLE_EQ(*m.interrupt_pct, 25.0);
}

TEST(Metrics, InterruptionsByNonExpert) {
  // 11 interruptions, 8 of them seizing control from the expert (A): the
  // non-expert initiates 73% of them (to the nearest percent).
  using enum ShiftType;
  std::vector<ShiftType> seq;
  for (int k = 0; k < 3; ++k) seq.insert(seq.end(), {interruption, interruption});  // B seizes, A seizes back
  for (int k = 0; k < 5; ++k) seq.insert(seq.end(), {interruption, abdication});    // B seizes, B hands back
  std::vector<Analysis> corpus{analyze_steps(shift_sequence_steps(seq))};
  CorpusMetrics m = corpus_metrics(corpus);
  EXPECT_EQ(m.interruptions, 11u);
  EXPECT_EQ(m.interruptions_by_nonexpert, 8u);
  EXPECT_EQ(std::lround(*m.interrupts_by_nonexpert_pct), 73);
}

TEST(Metrics, UndefinedMetricsAreAbsent) {
  std::vector<Analysis> none;
  CorpusMetrics m = corpus_metrics(none);
  EXPECT_FALSE(m.turns_per_segment);
  EXPECT_FALSE(m.expert_control_pct);
  EXPECT_FALSE(m.abdication_pct);
  Dialogue d = make_dialogue({{"A", assertion}});
  d.participants[0].role = Role::unspecified;
  std::vector<Analysis> one{analyze(d)};
  CorpusMetrics n = corpus_metrics(one);
  EXPECT_FALSE(n.expert_control_pct);
  EXPECT_FALSE(n.interrupt_pct);
  EXPECT_DOUBLE_EQ(*n.turns_per_segment, 1.0);
}

TEST(MetricsProperty, ShiftPercentagesPartitionAllShifts) {
  std::mt19937_64 rng(4242);
  for (int k = 0; k < 200; ++k) {
    std::vector<Analysis> corpus{analyze(ctrlseg::testing::random_dialogue(rng, k))};
    CorpusMetrics m = corpus_metrics(corpus);
    EXPECT_EQ(m.abdications + m.summaries + m.interruptions, m.shifts);
    if (m.shifts) {
      EXPECT_NEAR(*m.abdication_pct + *m.summary_pct + *m.interrupt_pct, 100.0, 0.1);
    }
    if (m.turns_per_segment) {
      EXPECT_GE(*m.turns_per_segment, 1.0);
    }
    for (auto p : {m.expert_control_pct, m.abdication_pct, m.summary_pct, m.interrupt_pct}) {
      if (p) {
        EXPECT_TRUE(*p >= 0.0 && *p <= 100.0);
      }
    }
  }
}

TEST(Compare, IdenticalMixesGivePOne) {
  std::vector<CorpusGroup> groups{{"g1", {analyze_steps(shift_sequence_steps(shift_mix(4, 2, 3)))}},
                                  {"g2", {analyze_steps(shift_sequence_steps(shift_mix(4, 2, 3)))}}};
  GroupComparison c = compare_dialogue_types(groups);
  ASSERT_TRUE(c.test);
  EXPECT_NEAR(c.test->statistic, 0.0, 1e-12);
  EXPECT_NEAR(c.test->p_value, 1.0, 1e-12);
}

TEST(Compare, ThreeGroupsHaveFourDegreesOfFreedom) {
  std::vector<std::vector<double>> rows{{6, 2, 3}, {4, 4, 4}, {2, 1, 7}};
  std::vector<CorpusGroup> groups;
  for (std::size_t g = 0; g < 3; ++g)
    groups.push_back({"g" + std::to_string(g),
                      {analyze_steps(shift_sequence_steps(shift_mix(rows[g][0], rows[g][1], rows[g][2])))}});
  GroupComparison c = compare_dialogue_types(groups);
  ASSERT_TRUE(c.test);
  EXPECT_EQ(c.test->degrees_of_freedom, 4u);
  EXPECT_NEAR(c.test->statistic, static_cast<double>(pearson_oracle(rows)), 1e-9);
}

TEST(Compare, FigureThreeShiftMixesAreReproduced) {
  // Finance (38/23/38) and task-phone (45/7/48) mixes; the Finance
  // percentages sum to 99, so that group has 99 shifts.
  std::vector<CorpusGroup> groups{{"finance", {analyze_steps(shift_sequence_steps(shift_mix(38, 23, 38)))}},
                                  {"task-phone", {analyze_steps(shift_sequence_steps(shift_mix(45, 7, 48)))}}};
  GroupComparison c = compare_dialogue_types(groups);
  const CorpusMetrics& f = c.groups[0].second;
  const CorpusMetrics& t = c.groups[1].second;
  EXPECT_EQ(f.shifts, 99u);
  EXPECT_EQ(std::lround(*f.abdication_pct), 38);
  EXPECT_EQ(std::lround(*f.summary_pct), 23);
  EXPECT_EQ(std::lround(*f.interrupt_pct), 38);
  EXPECT_DOUBLE_EQ(*t.abdication_pct, 45.0);
  EXPECT_DOUBLE_EQ(*t.summary_pct, 7.0);
  EXPECT_DOUBLE_EQ(*t.interrupt_pct, 48.0);
  ASSERT_TRUE(c.test);
  EXPECT_EQ(c.test->degrees_of_freedom, 2u);
}

TEST(Compare, GroupsWithoutShiftsAreExcludedWithWarning) {
  std::vector<CorpusGroup> groups{{"quiet", {analyze_steps({{"A", assertion}})}},
                                  {"a", {analyze_steps(shift_sequence_steps(shift_mix(2, 1, 1)))}},
                                  {"b", {analyze_steps(shift_sequence_steps(shift_mix(1, 0, 3)))}}};
  GroupComparison c = compare_dialogue_types(groups);
  EXPECT_EQ(c.groups.size(), 3u);
  ASSERT_TRUE(c.test);
  EXPECT_EQ(c.shift_table.rows(), 2u);
  EXPECT_FALSE(c.warnings.empty());
  EXPECT_THROW(compare_dialogue_types(std::span<const CorpusGroup>(groups.data(), 1)), AnalysisError);
}
