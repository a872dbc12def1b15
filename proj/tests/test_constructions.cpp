#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "treegrp/constructions.hpp"

using namespace treegrp;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

std::vector<std::string> relator_strings(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relators) out.push_back(format_relator(r, p));
  return out;
}

std::vector<std::string> failed(const EpimorphismCertificate& c) {
  std::vector<std::string> out;
  for (const auto& v : c.verdicts)
    if (!v.verified) out.push_back(v.relator);
  return out;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  while (n > 1 && n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

TEST(TargetPresentation, Examples) {
  EXPECT_EQ(relator_strings(target_presentation("Xi")),
            (std::vector<std::string>{"a^2", "c^2", "d^2", "(cd)^2", "(ad)^4", "(ac)^8"}));
  EXPECT_EQ(relator_strings(target_presentation("delta")), (std::vector<std::string>{"x^2", "y^4", "(xy)^8"}));
  EXPECT_EQ(relator_strings(target_presentation("L")),
            (std::vector<std::string>{"x1^4", "x2^8", "(x2 x1^-1)^2"}));
  EXPECT_EQ(target_presentation("UPSILON").relators.size(), 10u);
  EXPECT_EQ(target_presentation("pi").generators, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(kind_of([] { target_presentation("omega"); }), ErrorKind::UnknownName);
}

TEST(QuotientContext, VerifiedInSigma) {
  for (const char* name : {"xi", "phi", "lambda", "pi", "L", "delta"}) {
    const auto spec = quotient_context(name, "(012)");
    const auto cert = spec.verify();
    EXPECT_TRUE(cert.verified()) << cert.str();
    EXPECT_TRUE(spec.warnings.empty()) << name;
  }
}

TEST(QuotientContext, ImagesAndTargets) {
  const auto phi = quotient_context("phi", "(012)");
  EXPECT_EQ(phi.image_name, "Q_(012)");
  EXPECT_EQ(phi.assignment[2].str(), "cac");
  EXPECT_EQ(quotient_context("lambda", "(012)").image_name, "S_(012)");
  EXPECT_EQ(quotient_context("upsilon", "(012)").target->description(), "Lambda1_(012)");
  EXPECT_EQ(quotient_context("pi", "(012)").target->description(), "V_(012)");
  const auto delta = quotient_context("delta", "(012)");
  EXPECT_EQ(delta.assignment[0].str(), "b");
  EXPECT_EQ(delta.assignment[1].str(), "ad");
}

TEST(QuotientContext, UpsilonInvolutionsFail) {
  const auto cert = quotient_context("upsilon", "(012)").verify();
  EXPECT_FALSE(cert.verified());
  EXPECT_EQ(failed(cert), (std::vector<std::string>{"b^2", "c^2", "d^2", "(ac)^2", "(ad)^2", "(bd)^2", "(ab)^4"}));
}

TEST(QuotientContext, WarnsWhenOmegaStartsOffZero) {
  const auto spec = quotient_context("xi", "1(20)");
  ASSERT_EQ(spec.warnings.size(), 1u);
  EXPECT_FALSE(spec.verify().verified());
  EXPECT_TRUE(quotient_context("phi", "1(20)").warnings.empty());
}

TEST(QuotientContext, DeltaInNonTorsionContext) {
  // 0(12) is outside Omega0: the defining relators hold but (x y^2)^16 does not.
  const auto spec = quotient_context("delta", "0(12)");
  EXPECT_TRUE(spec.verify().verified());
  const auto extra = power(compose(spec.assignment[0], power(spec.assignment[1], 2)), 16);
  EXPECT_FALSE(is_trivial(extra));
  const auto sigma = quotient_context("delta", "(012)");
  EXPECT_TRUE(is_trivial(power(compose(sigma.assignment[0], power(sigma.assignment[1], 2)), 16)));
}

TEST(TowerContexts, Lambda1Sections) {
  const auto ctx = lambda1_context(parse_omega("(012)"));
  const auto& g = ctx->child();
  const auto b = split_sections(parse_word("b", *ctx), *ctx);
  EXPECT_TRUE(b.sections[0].empty());
  EXPECT_EQ(format_word(b.sections[1], g), "acac");
  const auto c = split_sections(parse_word("c", *ctx), *ctx);
  EXPECT_EQ(format_word(c.sections[0], g), "ad");
  EXPECT_EQ(c.sections[0], c.sections[1]);
  EXPECT_EQ(ctx->generator(0).order, 2u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(ctx->generator(i).order, 4u);
}

TEST(TowerContexts, VPsiImages) {
  const auto ctx = v_context(parse_omega("(012)"));
  const auto& g = ctx->child();
  const auto p = split_sections(parse_word("p", *ctx), *ctx);
  EXPECT_EQ(format_word(p.sections[0], g), "a");
  EXPECT_TRUE(p.sections[1].empty());
  EXPECT_EQ(format_word(split_sections(parse_word("q", *ctx), *ctx).sections[1], g), "b");
  EXPECT_EQ(format_word(split_sections(parse_word("r", *ctx), *ctx).sections[1], g), "c");
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ctx->generator(i).order, 2u);
  EXPECT_TRUE(is_trivial(parse_word("(ap)^4", *ctx), *ctx));
}

TEST(GuptaSidki, Examples) {
  const auto gs = gupta_sidki_context(3);
  EXPECT_EQ(gs->description(), "GS_3");
  EXPECT_EQ(order(parse_word("x", *gs), *gs).value, 3u);
  EXPECT_EQ(order(parse_word("y", *gs), *gs).value, 3u);
  EXPECT_EQ(order(parse_word("xy", *gs), *gs).value, 9u);
  const auto y = split_sections(parse_word("y", *gs), *gs);
  EXPECT_EQ(format_word(y.sections[0], *gs), "x");
  EXPECT_EQ(format_word(y.sections[1], *gs), "X");
  EXPECT_EQ(format_word(y.sections[2], *gs), "y");
  for (unsigned p : {0u, 1u, 2u, 4u, 9u, 67u}) EXPECT_EQ(kind_of([p] { gupta_sidki_context(p); }), ErrorKind::BadPrime) << p;
  EXPECT_NO_THROW(gupta_sidki_context(61));
}

TEST(Lysenok, Examples) {
  const auto g = build_context("(012)");
  const auto rels = lysenok_relators(2, *g);
  ASSERT_EQ(rels.size(), 11u);
  EXPECT_EQ(rels[4].family, "bcd");
  EXPECT_EQ(format_word(rels[5].word, *g), "adadadad");
  EXPECT_EQ(format_word(rels[6].word, *g), format_word(parse_normal("(ac)^8", *g), *g));
  EXPECT_EQ(format_word(lysenok_substitute(parse_word("b", *g), *g), *g), "d");
  EXPECT_EQ(format_word(lysenok_substitute(parse_word("a", *g), *g), *g), "aca");
}

TEST(Lysenok, AllTrivialWithGeometricLengths) {
  const auto g = build_context("(012)");
  for (const auto& r : lysenok_relators(6, *g)) {
    EXPECT_TRUE(is_trivial(r.word, *g)) << r.family << " n=" << r.n;
    if (r.family == "(ad)^4") EXPECT_EQ(r.word.size(), std::size_t{8} << r.n);
    if (r.family == "(adacac)^4") EXPECT_EQ(r.word.size(), std::size_t{24} << r.n);
  }
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(ConstructionsProperty, TowerLevelActionsAreHomomorphisms) {
  std::mt19937_64 rng(131);
  const auto omega = parse_omega("(012)");
  const std::vector<std::pair<ContextPtr, std::string>> contexts{
      {lambda1_context(omega), "abcd"}, {v_context(omega), "apqr"}, {gupta_sidki_context(3), "xy"}, {gupta_sidki_context(5), "xy"}};
  for (const auto& [ctx, letters] : contexts) {
    const unsigned max_level = ctx->arity() == 2 ? 10 : (ctx->arity() == 3 ? 6 : 4);
    for (int trial = 0; trial < 20; ++trial) {
      std::string x, y;
      for (int i = 0; i < 8; ++i) x += letters[rng() % letters.size()];
      for (int i = 0; i < 8; ++i) y += letters[rng() % letters.size()];
      const TreeElement ex = TreeElement::parse(ctx, x), ey = TreeElement::parse(ctx, y);
      for (unsigned n = 1; n <= max_level; ++n)
        EXPECT_EQ(level_action(compose(ex, ey), n), level_action(ex, n) * level_action(ey, n)) << x << " " << y;
    }
  }
}

TEST(ConstructionsProperty, GuptaSidkiOrdersArePowersOfP) {
  std::mt19937_64 rng(137);
  for (unsigned p : {3u, 5u}) {
    const auto gs = gupta_sidki_context(p);
    for (int trial = 0; trial < 40; ++trial) {
      std::string w;
      const int len = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i < len; ++i) w += "xyXY"[rng() % 4];
      const auto r = order(parse_word(w, *gs), *gs, OrderBudget{200000, 1u << 16});
      if (r.undetermined()) continue;
      EXPECT_TRUE(is_power_of(r.value, p)) << w << " has order " << r.value;
    }
  }
}

TEST(ConstructionsProperty, QuotientMapsHoldWheneverOmegaStartsWith01) {
  // (ad)^4 needs w_1 = 0 and (ac)^8 needs w_2 = 1; the tail is free.
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 10; ++trial) {
    const auto text = "01" + oracle::random_omega(rng, true, 2, 4);
    for (const char* name : {"xi", "phi", "lambda", "pi"}) {
      const auto cert = quotient_context(name, text).verify();
      EXPECT_TRUE(cert.verified()) << name << " " << text << "\n" << cert.str();
    }
  }
}
