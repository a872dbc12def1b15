#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "oracle.hpp"
#include "treegrp/element.hpp"
#include "treegrp/omega.hpp"
#include "treegrp/solver.hpp"

using namespace treegrp;

namespace {

ContextPtr sigma() { return build_context("(012)"); }

std::string nf(const char* w, const Context& ctx) { return format_word(parse_normal(w, ctx), ctx); }

}  // namespace

TEST(Normalize, Examples) {
  const auto g = sigma();
  EXPECT_EQ(nf("aabd", *g), "c");
  EXPECT_EQ(nf("badb", *g), "bac");
  EXPECT_EQ(nf("bada", *g), "bada");
  EXPECT_EQ(nf("bb", *g), "1");
  EXPECT_EQ(nf("bcd", *g), "1");
  EXPECT_EQ(nf("(ad)^4", *g), "adadadad");
  // Trivial generators vanish in degenerate contexts.
  EXPECT_EQ(nf("adb", *build_context("(0)")), "ab");
  EXPECT_THROW(parse_normal("ae", *g), Error);
}

TEST(SplitSections, Examples) {
  const auto g0 = build_context("0(12)");
  const auto sb = split_sections(parse_normal("b", *g0), *g0);
  EXPECT_TRUE(sb.root.is_identity());
  EXPECT_EQ(format_word(sb.sections[0], g0->child()), "a");
  EXPECT_EQ(format_word(sb.sections[1], g0->child()), "b");

  const auto g = sigma();
  const auto s = split_sections(parse_normal("adad", *g), *g);
  EXPECT_TRUE(s.root.is_identity());
  EXPECT_EQ(s.sections[0], s.sections[1]);
  EXPECT_EQ(format_word(s.sections[0], g->child()), "d");

  const auto sa = split_sections(parse_normal("a", *g), *g);
  EXPECT_FALSE(sa.root.is_identity());
  EXPECT_TRUE(sa.sections[0].empty() && sa.sections[1].empty());
}

TEST(IsTrivial, Examples) {
  EXPECT_TRUE(is_trivial(parse_word("adadadad", *build_context("0(12)")), *build_context("0(12)")));
  const auto g = sigma();
  const auto t = decide_triviality(parse_word("adad", *g), *g);
  EXPECT_FALSE(t.trivial);
  // adad = (d, d) with d nontrivial below the first level; the level-2 action is trivial.
  EXPECT_TRUE(word_level_action(parse_word("adad", *g), *g, 2).is_identity());
  EXPECT_EQ(t.witness_level, 3u);
  for (const char* w : {"(012)", "0(21)", "(0)", "(12)"}) {
    const auto c = build_context(w);
    EXPECT_TRUE(is_trivial(parse_word("bcd", *c), *c)) << w;
  }
}

TEST(AreEqual, Examples) {
  const auto g = sigma();
  EXPECT_TRUE(are_equal(parse_word("bc", *g), parse_word("d", *g), *g));
  EXPECT_FALSE(are_equal(parse_word("ab", *g), parse_word("ba", *g), *g));
  const auto w = parse_word("abacabad", *g);
  EXPECT_TRUE(are_equal(w, w, *g));
}

TEST(Order, Examples) {
  const auto g = sigma();
  EXPECT_EQ(order(parse_word("ab", *g), *g).value, 16u);
  EXPECT_EQ(order(parse_word("a", *g), *g).value, 2u);
  const auto h = build_context("0(21)");
  EXPECT_EQ(order(parse_word("ac", *h), *h).value, 16u);
}

TEST(Order, MatchesStabilizedLevelOrder) {
  const auto omega = parse_omega("(012)");
  const auto g = build_context(omega);
  for (const char* w : {"ab", "ac", "ad", "abac", "abad", "acad", "abacad", "cac", "dcac", "bad", "badad", "abcacd"}) {
    const auto r = order(parse_word(w, *g), *g);
    ASSERT_TRUE(r.finite) << w;
    EXPECT_EQ(r.value, oracle::stabilized_order(w, omega)) << w;
  }
}

TEST(Order, UndeterminedWithinBudget) {
  const auto g = build_context("(01)");
  const auto r = order(parse_word("ab", *g), *g, OrderBudget{1000, 1u << 12});
  EXPECT_TRUE(r.undetermined());
}

TEST(StabilizerSections, Examples) {
  const auto g = sigma();
  const std::vector<Word> just_a{parse_word("a", *g)};
  EXPECT_TRUE(stabilizer_sections(just_a, *g).generators.empty());

  std::vector<Word> all;
  for (const char* w : {"a", "b", "c", "d"}) all.push_back(parse_word(w, *g));
  const auto s = stabilizer_sections(all, *g);
  std::vector<std::string> words;
  for (const auto& gen : s.generators) {
    words.push_back(format_word(gen.word, *g));
    EXPECT_TRUE(root_permutation(gen.word, *g).is_identity());
  }
  std::sort(words.begin(), words.end());
  EXPECT_EQ(words, (std::vector<std::string>{"aba", "aca", "ada", "b", "c", "d"}));
}

TEST(StabilizerSections, SectionsReproduceLevelActions) {
  const auto g = sigma();
  const std::vector<Word> gens{parse_word("ad", *g), parse_word("acac", *g)};
  for (const auto& s : stabilizer_sections(gens, *g).generators) {
    const auto full = word_level_action(s.word, *g, 6);
    const auto left = word_level_action(s.sections[0], g->child(), 5);
    const auto right = word_level_action(s.sections[1], g->child(), 5);
    for (Permutation::Point x = 0; x < 32; ++x) {
      EXPECT_EQ(full(x), left(x));
      EXPECT_EQ(full(32 + x), 32 + right(x));
    }
  }
}

TEST(StabilizerSections, NotApplicableForIntransitiveAction) {
  // Binary trees have only trivial or transitive first-level actions; use a 3-ary context.
  Context ctx("test:three", 3,
              {Generator{'s', 2, Permutation::transposition(3, 0, 1), {Word{}, Word{}, Word{}}, false}});
  ctx.set_child(&ctx);
  const std::vector<Word> gens{Word{Letter{0, false}}};
  EXPECT_THROW(stabilizer_sections(gens, ctx), Error);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(SolverProperty, SoundnessAndWitness) {
  std::mt19937_64 rng(59);
  int trivial_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto text = oracle::random_omega(rng, false);
    const auto omega = parse_omega(text);
    const auto g = build_context(omega);
    // Bias toward trivial words: w x w^-1 x^-1 style products and relator powers.
    std::string w = oracle::random_word(rng, 14);
    if (trial % 3 == 0) w = oracle::power(w, 8);
    const auto t = decide_triviality(parse_word(w, *g), *g);
    if (t.trivial) {
      ++trivial_seen;
      for (unsigned n : {4u, 8u, 12u}) EXPECT_TRUE(oracle::is_identity(oracle::level_permutation(w, omega, n))) << text << " " << w;
    } else {
      ASSERT_GT(t.witness_level, 0u) << text << " " << w;
      if (t.witness_level > 16) continue;
      EXPECT_FALSE(oracle::is_identity(oracle::level_permutation(w, omega, t.witness_level))) << text << " " << w;
    }
  }
  EXPECT_GT(trivial_seen, 20);
}

TEST(SolverProperty, Contraction) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = build_context(oracle::random_omega(rng, false));
    const Word w = parse_normal(oracle::random_word(rng, 40), *g);
    if (w.size() < 2) continue;
    const auto s = split_sections(w, *g);
    for (const auto& part : s.sections) EXPECT_LE(part.size(), (w.size() + 1) / 2);
  }
}

TEST(SolverProperty, RecursionDepthIsLogarithmic) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = build_context(oracle::random_omega(rng, true));
    Word w = parse_normal(oracle::random_word(rng, 200), *g);
    if (w.size() < 2) continue;
    // Depth of the splitting tree until every section has length <= 1.
    unsigned depth = 0;
    std::vector<std::pair<Word, const Context*>> layer{{w, g.get()}};
    while (!layer.empty()) {
      std::vector<std::pair<Word, const Context*>> next;
      for (const auto& [u, c] : layer) {
        if (u.size() <= 1) continue;
        for (auto& s : split_sections(u, *c).sections) next.emplace_back(std::move(s), &c->child());
      }
      if (next.empty()) break;
      layer = std::move(next);
      ++depth;
    }
    EXPECT_LE(depth, static_cast<unsigned>(std::ceil(std::log2(w.size()))) + 2);
  }
}

TEST(SolverProperty, OrderCoherence) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 150; ++trial) {
    const auto omega = parse_omega(oracle::random_omega(rng, true));
    const auto g = build_context(omega);
    const auto w = oracle::random_word(rng, 12);
    const auto r = order(parse_word(w, *g), *g);
    ASSERT_TRUE(r.finite) << omega.str() << " " << w;
    EXPECT_TRUE(is_trivial(parse_word(oracle::power(w, static_cast<unsigned>(r.value)), *g), *g));
    if (r.value % 2 == 0)
      EXPECT_FALSE(is_trivial(parse_word(oracle::power(w, static_cast<unsigned>(r.value / 2)), *g), *g));
  }
}

TEST(SolverProperty, LevelOrdersDivideAndReachOrder) {
  std::mt19937_64 rng(73);
  const auto omega = parse_omega("(012)");
  const auto g = build_context(omega);
  for (int trial = 0; trial < 60; ++trial) {
    const auto w = oracle::random_word(rng, 10);
    const auto r = order(parse_word(w, *g), *g);
    ASSERT_TRUE(r.finite);
    std::uint64_t previous = 1;
    bool reached = r.value == 1;
    for (unsigned n = 1; n <= 12; ++n) {
      const auto o = word_level_action(parse_word(w, *g), *g, n).order();
      EXPECT_EQ(o % previous, 0u);
      EXPECT_EQ(r.value % o, 0u);
      reached = reached || o == r.value;
      previous = o;
    }
    EXPECT_TRUE(reached) << w;
  }
}

TEST(SolverProperty, NormalizeIdempotentAndPreservesTriviality) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = build_context(oracle::random_omega(rng, false));
    const Word w = parse_word(oracle::random_word(rng, 24), *g);
    const Word n = normalize(w, *g);
    EXPECT_EQ(normalize(n, *g), n);
    EXPECT_EQ(is_trivial(n, *g), is_trivial(w, *g));
    for (std::size_t i = 1; i < n.size(); ++i) EXPECT_NE(n[i].gen == 0, n[i - 1].gen == 0);
  }
}

TEST(SolverProperty, PrefilterDoesNotChangeEquality) {
  std::mt19937_64 rng(83);
  const auto g = build_context("(012)");
  for (int trial = 0; trial < 400; ++trial) {
    const Word x = parse_word(oracle::random_word(rng, 8), *g), y = parse_word(oracle::random_word(rng, 8), *g);
    EXPECT_EQ(are_equal(x, y, *g, {true, 6}), are_equal(x, y, *g, {false, 0}));
  }
}

TEST(SolverConcurrency, SharedCachesGiveSameAnswers) {
  std::mt19937_64 rng(89);
  std::vector<std::string> omegas, words;
  for (int i = 0; i < 64; ++i) {
    omegas.push_back(oracle::random_omega(rng, true));
    words.push_back(oracle::random_word(rng, 16));
  }
  auto compute = [&](std::size_t i) {
    const auto g = build_context(omegas[i]);
    const auto w = parse_word(words[i], *g);
    return std::make_tuple(is_trivial(w, *g), order(w, *g).value, word_level_action(w, *g, 7).images());
  };
  std::vector<decltype(compute(0))> serial;
  for (std::size_t i = 0; i < omegas.size(); ++i) serial.push_back(compute(i));

  std::vector<decltype(compute(0))> parallel(omegas.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < omegas.size(); i += 8) parallel[i] = compute(i);
    });
  for (auto& th : threads) th.join();
  EXPECT_EQ(serial, parallel);
}
