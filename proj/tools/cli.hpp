#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "treegrp/analysis.hpp"
#include "treegrp/constructions.hpp"
#include "treegrp/coxeter.hpp"

namespace treegrp::cli {

enum Exit : int { Ok = 0, PropertyFailed = 1, Usage = 2, Undetermined = 3 };

struct ContextChoice {
  std::string omega = "(012)";
  std::string kind = "omega";  // omega | lambda1 | v | gupta-sidki
  unsigned p = 3;

  ContextPtr resolve() const {
    if (kind == "gupta-sidki") return gupta_sidki_context(p);
    const OmegaSequence w = parse_omega(omega);
    if (kind == "omega") return build_context(w);
    if (kind == "lambda1") return lambda1_context(w);
    if (kind == "v") return v_context(w);
    throw Error(ErrorKind::InvalidArgument, "unknown context kind '" + kind + "'");
  }

  void echo(std::ostream& out) const {
    out << "# context: " << kind;
    if (kind == "gupta-sidki")
      out << " p=" << p << "\n";
    else
      out << " omega=" << parse_omega(omega).str() << "\n";
  }
};

inline void add_context_options(CLI::App* cmd, ContextChoice& c) {
  cmd->add_option("--omega", c.omega, "eventually periodic sequence, e.g. \"0(12)\"")->capture_default_str();
  cmd->add_option("--context", c.kind, "omega | lambda1 | v | gupta-sidki")
      ->check(CLI::IsMember({"omega", "lambda1", "v", "gupta-sidki"}))
      ->capture_default_str();
  cmd->add_option("--p", c.p, "prime for --context gupta-sidki")->capture_default_str();
}

/// Words separated by whitespace or commas.
inline std::vector<Word> parse_words(const std::string& text, const Context& ctx) {
  std::vector<Word> out;
  std::string spaced = text;
  for (auto& ch : spaced)
    if (ch == ',') ch = ' ';
  std::istringstream in(spaced);
  for (std::string token; in >> token;) out.push_back(parse_normal(token, ctx));
  return out;
}

inline std::string join_words(const std::vector<Word>& words, const Context& ctx) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + format_word(w, ctx);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void print_certificate(std::ostream& out, const EpimorphismCertificate& cert) { out << cert.str() << "\n"; }

inline int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::HypothesisNotMet:
    case ErrorKind::NotApplicable: return PropertyFailed;
    case ErrorKind::BudgetExceeded: return Undetermined;
    default: return Usage;
  }
}

/// Runs one invocation. Primary output goes to `out` and is deterministic;
/// configuration lines start with "# "; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-automorphism groups: word problem, orders, Coxeter reductions, finite-level evidence",
               "treegrp"};
  app.require_subcommand(1);
  int code = Ok;

  // wp
  ContextChoice wp_ctx;
  std::string wp_word;
  auto* wp = app.add_subcommand("wp", "decide whether a word is trivial");
  add_context_options(wp, wp_ctx);
  wp->add_option("--word", wp_word, "word, e.g. \"(ad)^4\"")->required();
  wp->callback([&] {
    wp_ctx.echo(out);
    out << "# word: " << wp_word << "\n";
    const auto ctx = wp_ctx.resolve();
    const auto t = decide_triviality(parse_word(wp_word, *ctx), *ctx);
    if (t.trivial)
      out << "trivial\n";
    else
      out << "nontrivial (witness level " << t.witness_level << ")\n";
  });

  // order
  ContextChoice ord_ctx;
  std::string ord_word;
  OrderBudget ord_budget;
  auto* ord = app.add_subcommand("order", "order of an element");
  add_context_options(ord, ord_ctx);
  ord->add_option("--word", ord_word, "word")->required();
  ord->add_option("--budget", ord_budget.max_steps, "maximum recursion steps")->capture_default_str();
  ord->add_option("--max-length", ord_budget.max_word_length, "maximum intermediate word length")->capture_default_str();
  ord->callback([&] {
    ord_ctx.echo(out);
    out << "# word: " << ord_word << "\n# budget: steps=" << ord_budget.max_steps
        << " max-length=" << ord_budget.max_word_length << "\n";
    const auto ctx = ord_ctx.resolve();
    const auto r = order(parse_word(ord_word, *ctx), *ctx, ord_budget);
    if (r.finite) {
      out << r.value << "\n";
    } else {
      out << "undetermined (steps=" << r.steps << ", max length=" << r.max_length << ")\n";
      code = Undetermined;
    }
  });

  // growth
  std::string growth_omega;
  std::vector<std::string> growth_compare;
  std::string growth_genset = "a b c d", growth_out;
  unsigned growth_radius = 10;
  bool growth_no_prefilter = false;
  auto* growth = app.add_subcommand("growth", "ball sizes of the Cayley graph");
  growth->add_option("--omega", growth_omega, "sequence")->required();
  growth->add_option("--compare", growth_compare, "further sequences for a batch table");
  growth->add_option("--radius", growth_radius, "radius")->capture_default_str();
  growth->add_option("--genset", growth_genset, "inverse-closed generating set")->capture_default_str();
  growth->add_option("--out", growth_out, "CSV file (default: standard output)");
  growth->add_flag("--no-prefilter", growth_no_prefilter, "disable the level-6 hash prefilter");
  growth->callback([&] {
    out << "# radius: " << growth_radius << "\n# genset: " << growth_genset
        << "\n# prefilter: " << (growth_no_prefilter ? "off" : "level 6") << "\n";
    std::vector<std::string> growth_omegas{growth_omega};
    growth_omegas.insert(growth_omegas.end(), growth_compare.begin(), growth_compare.end());
    std::ostringstream csv;
    const bool batch = growth_omegas.size() > 1;
    csv << (batch ? "omega,n,gamma\n" : "n,gamma\n");
    for (const auto& text : growth_omegas) {
      const auto ctx = build_context(text);
      const auto gens = parse_words(growth_genset, *ctx);
      GrowthOptions options;
      options.prefilter = !growth_no_prefilter;
      const auto series = growth_series(ctx, gens, growth_radius, options);
      for (std::size_t n = 0; n < series.values.size(); ++n)
        csv << (batch ? parse_omega(text).str() + "," : "") << n << "," << series.values[n] << "\n";
      if (!series.complete) {
        out << "# " << series.context << ": element budget exhausted; series is partial\n";
        code = Undetermined;
      }
    }
    if (growth_out.empty()) {
      out << csv.str();
    } else {
      std::ofstream file(growth_out);
      if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + growth_out + "'");
      file << csv.str();
      out << "# written: " << growth_out << "\n";
    }
  });

  // orbits
  ContextChoice orb_ctx;
  std::string orb_subgroup;
  unsigned orb_level = 4;
  auto* orb = app.add_subcommand("orbits", "orbit partition of a subgroup on levels 1..n");
  add_context_options(orb, orb_ctx);
  orb->add_option("--subgroup", orb_subgroup, "generating words (default: all generators)");
  orb->add_option("--level", orb_level, "deepest level")->capture_default_str()->check(CLI::Range(0u, 16u));
  orb->callback([&] {
    orb_ctx.echo(out);
    const auto ctx = orb_ctx.resolve();
    const auto gens = orb_subgroup.empty() ? context_generators(*ctx) : parse_words(orb_subgroup, *ctx);
    out << "# subgroup: " << join_words(gens, *ctx) << "\n";
    out << "n,orbits,transitive\n";
    bool transitive = true;
    for (unsigned n = 1; n <= orb_level; ++n) {
      const auto report = level_orbits(gens, *ctx, n);
      out << n << "," << report.orbits.size() << "," << (report.transitive() ? "yes" : "no") << "\n";
      transitive = report.transitive();
    }
    if (!transitive) code = PropertyFailed;
  });

  // index
  ContextChoice idx_ctx;
  std::string idx_subgroup;
  unsigned idx_level = 4;
  bool idx_normal = false;
  auto* idx = app.add_subcommand("index", "index of a subgroup's level-n image");
  add_context_options(idx, idx_ctx);
  idx->add_option("--subgroup", idx_subgroup, "generating words")->required();
  idx->add_option("--level", idx_level, "level")->capture_default_str();
  idx->add_flag("--normal-closure", idx_normal, "use the normal closure of the words");
  idx->callback([&] {
    idx_ctx.echo(out);
    const auto ctx = idx_ctx.resolve();
    const auto gens = parse_words(idx_subgroup, *ctx);
    out << "# subgroup: " << (idx_normal ? "normal closure of " : "") << join_words(gens, *ctx) << "\n# level: " << idx_level
        << "\n";
    IndexOptions options;
    options.normal_closure = idx_normal;
    out << congruence_index(*ctx, gens, idx_level, options) << "\n";
  });

  // sample-torsion
  ContextChoice tor_ctx;
  std::size_t tor_count = 200, tor_maxlen = 24;
  std::uint64_t tor_seed = 1;
  OrderBudget tor_budget;
  auto* tor = app.add_subcommand("sample-torsion", "orders of seeded random words");
  add_context_options(tor, tor_ctx);
  tor->add_option("--count", tor_count, "number of words")->capture_default_str();
  tor->add_option("--maxlen", tor_maxlen, "maximum word length")->capture_default_str();
  tor->add_option("--budget", tor_budget.max_steps, "order budget in steps")->capture_default_str();
  tor->add_option("--seed", tor_seed, "seed")->capture_default_str();
  tor->callback([&] {
    tor_ctx.echo(out);
    const auto ctx = tor_ctx.resolve();
    const auto report = torsion_sample(ctx, tor_count, tor_maxlen, tor_budget, tor_seed);
    out << "# seed: " << report.seed << " generator: " << report.generator << "\n# count: " << report.count
        << " maxlen: " << report.max_length << " budget: " << report.budget.max_steps << "\n";
    out << "word,order\n";
    for (const auto& s : report.samples)
      out << format_word(s.word, *ctx) << "," << (s.order.finite ? std::to_string(s.order.value) : "undetermined") << "\n";
    const auto bad = report.violations();
    out << "summary: " << report.samples.size() - report.undetermined() << " finite, " << report.undetermined()
        << " undetermined, " << bad.size() << " not powers of " << report.prime << "\n";
    if (!bad.empty())
      code = PropertyFailed;
    else if (report.undetermined())
      code = Undetermined;
  });

  // coxeter
  auto* cox = app.add_subcommand("coxeter", "Coxeter graph tools");
  cox->require_subcommand(1);
  std::string cox_file;
  auto* check = cox->add_subcommand("check", "validate labels and test the hypothesis");
  check->add_option("file", cox_file, "graph file")->required();
  check->callback([&] {
    out << "# graph: " << cox_file << "\n";
    const auto g = parse_graph(read_file(cox_file));
    for (const auto& e : validate_labels(g)) out << "label error: " << e.str() << "\n";
    const auto v = hypothesis_check(g);
    out << v.str() << "\n";
    if (!v.satisfies) code = PropertyFailed;
  });
  auto* red = cox->add_subcommand("reduce", "map onto a critical group");
  red->add_option("file", cox_file, "graph file")->required();
  red->callback([&] {
    out << "# graph: " << cox_file << "\n";
    const auto r = reduce(parse_graph(read_file(cox_file)));
    for (const auto& t : r.trace) out << "trace: " << t << "\n";
    if (!r.success) {
      out << "Failure: " << r.reason << "\n";
      code = PropertyFailed;
      return;
    }
    for (const auto& m : r.moves) out << "move: " << m.str() << "\n";
    out << "Success(" << to_string(r.target) << ")\n";
  });
  std::string cv_target = "xi", cv_omega = "(012)";
  std::size_t cv_length = 2;
  auto* cv = cox->add_subcommand("verify", "certify an epimorphism onto a concrete target");
  cv->add_option("file", cox_file, "graph file")->required();
  cv->add_option("--target", cv_target, "xi | phi | upsilon | pi | delta")
      ->check(CLI::IsMember({"xi", "phi", "upsilon", "pi", "delta"}))
      ->capture_default_str();
  cv->add_option("--omega", cv_omega, "sequence")->capture_default_str();
  cv->add_option("--max-length", cv_length, "word length bound for the fallback search")->capture_default_str();
  cv->callback([&] {
    out << "# graph: " << cox_file << "\n# target: " << cv_target << " omega=" << parse_omega(cv_omega).str() << "\n";
    const auto g = parse_graph(read_file(cox_file));
    const auto omega = parse_omega(cv_omega);
    if (hypothesis_check(g).satisfies) {
      const auto r = reduce(g);
      if (r.success && presentation_key(r.target) == cv_target) {
        out << "reduction: " << to_string(r.target) << "\n";
        const auto cert = reduction_certificate(g, r, omega);
        print_certificate(out, cert);
        if (!cert.verified()) code = PropertyFailed;
        return;
      }
    }
    out << "reduction does not reach " << cv_target << "; bounded search with L=" << cv_length << "\n";
    const auto spec = quotient_context(cv_target, omega);
    SearchOptions options;
    options.max_word_length = cv_length;
    const auto cert = search_homomorphism(coxeter_presentation(g), spec.target, options);
    if (!cert) {
      out << "NotFound\n";
      code = PropertyFailed;
      return;
    }
    print_certificate(out, *cert);
    if (!cert->verified()) code = PropertyFailed;
  });

  // verify
  std::string ver_target, ver_omega = "(012)";
  auto* ver = app.add_subcommand("verify", "verify a built-in quotient map");
  ver->add_option("--target", ver_target, "xi | phi | upsilon | pi | lambda | delta | L")->required();
  ver->add_option("--omega", ver_omega, "sequence")->capture_default_str();
  ver->callback([&] {
    out << "# target: " << ver_target << " omega=" << parse_omega(ver_omega).str() << "\n";
    const auto spec = quotient_context(ver_target, ver_omega);
    for (const auto& w : spec.warnings) out << "# warning: " << w << "\n";
    out << "# image: " << spec.image_name << "\n";
    const auto cert = spec.verify();
    print_certificate(out, cert);
    if (!cert.verified()) code = PropertyFailed;
    if (spec.source.name == "Delta") {
      // x y^2 with x, y the assigned images.
      const Word extra = concat(spec.assignment[0].word(), concat(spec.assignment[1].word(), spec.assignment[1].word()));
      const auto t = decide_triviality(power(TreeElement(spec.target, extra), 16).word(), *spec.target);
      out << "extra (xy^2)^16: " << (t.trivial ? "verified" : "failed (witness level " + std::to_string(t.witness_level) + ")")
          << "\n";
      if (!t.trivial) code = PropertyFailed;
    }
  });

  // lysenok
  unsigned ly_max = 4;
  std::string ly_omega = "(012)";
  auto* ly = app.add_subcommand("lysenok", "check the recursive relators");
  ly->add_option("--max-n", ly_max, "substitution depth")->capture_default_str();
  ly->add_option("--omega", ly_omega, "sequence")->capture_default_str();
  ly->callback([&] {
    out << "# omega: " << parse_omega(ly_omega).str() << " max-n: " << ly_max << "\n";
    const auto ctx = build_context(ly_omega);
    out << "family,n,length,verdict\n";
    for (const auto& r : lysenok_relators(ly_max, *ctx)) {
      const auto t = decide_triviality(r.word, *ctx);
      out << r.family << "," << r.n << "," << r.word.size() << ","
          << (t.trivial ? "trivial" : "nontrivial@" + std::to_string(t.witness_level)) << "\n";
      if (!t.trivial) code = PropertyFailed;
    }
  });

  // gupta-sidki
  unsigned gs_p = 3;
  bool gs_check = false;
  auto* gs = app.add_subcommand("gupta-sidki", "orders and relators of the p-ary group");
  gs->add_option("--p", gs_p, "odd prime")->capture_default_str();
  gs->add_flag("--check-relators", gs_check, "check x^p, y^p and (x^i y^j)^(p^2)");
  gs->callback([&] {
    out << "# p: " << gs_p << "\n";
    const auto ctx = gupta_sidki_context(gs_p);
    for (const char* w : {"x", "y", "xy"}) {
      const auto r = order(parse_word(w, *ctx), *ctx);
      out << "order(" << w << ") = " << (r.finite ? std::to_string(r.value) : "undetermined") << "\n";
      if (!r.finite) code = Undetermined;
    }
    if (!gs_check) return;
    const Word x = parse_word("x", *ctx), y = parse_word("y", *ctx);
    auto pow = [](const Word& w, unsigned n) {
      Word out;
      for (unsigned k = 0; k < n; ++k) out.insert(out.end(), w.begin(), w.end());
      return out;
    };
    std::size_t failed = 0;
    failed += !is_trivial(pow(x, gs_p), *ctx);
    failed += !is_trivial(pow(y, gs_p), *ctx);
    for (unsigned i = 1; i < gs_p; ++i)
      for (unsigned j = 1; j < gs_p; ++j) {
        const Word base = concat(pow(x, i), pow(y, j));
        if (!is_trivial(pow(base, gs_p * gs_p), *ctx)) {
          ++failed;
          out << "failed: (x^" << i << " y^" << j << ")^" << gs_p * gs_p << "\n";
        }
      }
    out << "relators: " << (failed ? "FAILED" : "all verified") << "\n";
    if (failed) code = PropertyFailed;
  });

  // stabilizer
  ContextChoice st_ctx;
  std::string st_subgroup;
  auto* st = app.add_subcommand("stabilizer", "Schreier generators of the first-level stabilizer with sections");
  add_context_options(st, st_ctx);
  st->add_option("--subgroup", st_subgroup, "generating words")->required();
  st->callback([&] {
    st_ctx.echo(out);
    const auto ctx = st_ctx.resolve();
    const auto gens = parse_words(st_subgroup, *ctx);
    out << "# subgroup: " << join_words(gens, *ctx) << "\n";
    const auto s = stabilizer_sections(gens, *ctx);
    out << "transversal: " << join_words(s.transversal, *ctx) << "\n";
    for (const auto& g : s.generators) {
      out << format_word(g.word, *ctx) << " -> (";
      for (std::size_t i = 0; i < g.sections.size(); ++i) out << (i ? ", " : "") << format_word(g.sections[i], ctx->child());
      out << ")\n";
    }
  });

  std::vector<const char*> argv{"treegrp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? Ok : Usage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e);
  }
  return code;
}

}  // namespace treegrp::cli
