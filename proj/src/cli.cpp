#include "looptop/cli.hpp"

#include "looptop/cobar.hpp"
#include "looptop/lyndon.hpp"
#include "looptop/ncalgebra.hpp"
#include "looptop/normal_form.hpp"
#include "looptop/report_json.hpp"
#include "looptop/spaces.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <iostream>
#include <sstream>

namespace looptop {

namespace {

constexpr int kUsage = 2;
constexpr int kFailed = 1;

std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

// Plain aligned columns separated by two spaces.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = display_width(header[c]);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], display_width(row[c]));
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - display_width(cells[c]) + 2, ' ');
    }
    return s + "\n";
  };
  std::string out = line(header);
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::string join(const std::vector<Integer>& xs, const std::string& sep) {
  std::vector<std::string> s;
  for (const auto& x : xs) s.push_back(x.get_str());
  return join(s, sep);
}

std::string surd_text(const QuadraticSurd& s) {
  return fmt::format("({} + {}√{})/2 ≈ {}", s.a.get_str(), s.b == 1 ? std::string() : s.b.get_str(), s.c.get_str(), s.decimal(10));
}

std::string report_table(const DecompositionReport& rep) {
  std::string out = table({"field", "value"},
                          {{"space", format_space(rep.space)},
                           {"max dimension", std::to_string(rep.max_dimension)},
                           {"inverted primes", rep.inverted_primes.empty() ? "none" : join(rep.inverted_primes, ", ")},
                           {"classification", to_string(rep.classification)},
                           {"growth rate", rep.growth ? surd_text(*rep.growth) : "-"},
                           {"moore", to_string(rep.moore.verdict)}});
  out += "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : rep.summands)
    rows.push_back({"S^" + std::to_string(s.sphere_dim), s.multiplicity.get_str(), join(s.witnesses, " ")});
  out += table({"sphere", "multiplicity", "witnesses"}, rows);
  out += "\nloop decomposition: " + rep.loop_decomposition + "\n";
  out += "moore: " + rep.moore.justification + "\n";
  for (const auto& n : rep.notes) out += "note: " + n + "\n";
  return out;
}

void emit_report(const DecompositionReport& rep, const std::string& format, std::ostream& out) {
  out << (format == "json" ? dump(report_json(rep)) : report_table(rep));
}

bool quadratic(const SpaceModel& space) {
  if (std::holds_alternative<BettiOneModel>(space)) return false;
  if (const auto* m = std::get_if<ManifoldModel>(&space)) return m->r >= 2;
  if (const auto* x = std::get_if<TwoCellModel>(&space)) return rank(x->form) >= 2;
  return true;
}

void require_quadratic(const SpaceModel& space) {
  if (!quadratic(space))
    throw std::invalid_argument("space " + format_space(space) +
                                " has no quadratic relation of rank >= 2 (Betti-one spaces go through verify cobar)");
}

int cmd_hilbert(const SpaceModel& space, int D, const std::string& format, std::ostream& out) {
  require_quadratic(space);
  const auto [alphabet, rel] = relation_from_space(space);
  const NormalizedRelation nr = normalize_relation(alphabet, rel);
  const PowerSeries h = hilbert_from_enumeration(nr.alphabet, nr.forbidden, D);
  const auto expected = expected_loop_ranks(space, D);
  bool ok = true;
  Json rows = Json::array();
  std::vector<std::vector<std::string>> trows;
  for (int d = 0; d <= D; ++d) {
    const Integer got = h[d].get_num();
    const bool same = got == expected[d];
    ok = ok && same;
    Json e;
    e["degree"] = d;
    e["irreducible_words"] = got.get_str();
    e["closed_form"] = expected[d].get_str();
    rows.push_back(std::move(e));
    trows.push_back({std::to_string(d), got.get_str(), expected[d].get_str(), same ? "ok" : "MISMATCH"});
  }
  if (format == "json") {
    Json j;
    j["space"] = format_space(space);
    j["max_degree"] = D;
    j["coefficients"] = std::move(rows);
    j["agree"] = ok;
    out << dump(j);
  } else {
    out << table({"degree", "irreducible words", "closed form", "check"}, trows);
  }
  return ok ? 0 : kFailed;
}

int cmd_lie_basis(const SpaceModel& space, int D, const std::string& format, std::ostream& out) {
  require_quadratic(space);
  const auto [alphabet, rel] = relation_from_space(space);
  const NormalizedRelation nr = normalize_relation(alphabet, rel);
  const auto counts = count_lyndon_avoiding(nr.alphabet, nr.forbidden, D);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total > 20000) throw CapacityError(fmt::format("lie-basis: {} basis elements up to degree {}; lower --max-degree", total, D));
  const auto basis = lie_basis(nr, D);
  const auto names = generator_names(space, nr.alphabet.size());
  Json degrees = Json::array();
  std::vector<std::vector<std::string>> trows;
  for (const auto& [d, elems] : basis) {
    Json e;
    e["degree"] = d;
    e["count"] = elems.size();
    Json items = Json::array();
    for (const auto& b : elems) {
      Json it;
      it["word"] = word_label(b.lyndon);
      it["bracket"] = bracket_string(b.lyndon, names);
      it["expansion"] = b.bracket.to_string();
      items.push_back(std::move(it));
      trows.push_back({std::to_string(d), word_label(b.lyndon), bracket_string(b.lyndon, names)});
    }
    e["elements"] = std::move(items);
    degrees.push_back(std::move(e));
  }
  if (format == "json") {
    Json j;
    j["space"] = format_space(space);
    j["max_degree"] = D;
    j["degrees"] = std::move(degrees);
    out << dump(j);
  } else {
    out << table({"degree", "lyndon word", "bracket"}, trows);
  }
  return 0;
}

int cmd_verify_pipelines(const SpaceModel& space, int D, const std::string& format, std::ostream& out) {
  require_quadratic(space);
  const auto [alphabet, rel] = relation_from_space(space);
  const NormalizedRelation nr = normalize_relation(alphabet, rel);
  PowerSeries denom = relation_denominator(nr.alphabet, D);
  const DimensionTable by_moebius = moebius_invert_dims(log_lambda_coefficients(denom, D), D);
  std::vector<Integer> ranks = expected_loop_ranks(space, D);
  PowerSeries hilbert(D);
  for (int d = 0; d <= D; ++d) hilbert[d] = Rational(ranks[d]);
  const DimensionTable by_pbw = pbw_match_ungraded(hilbert, D);
  const auto by_lyndon = count_lyndon_avoiding(nr.alphabet, nr.forbidden, D);
  bool ok = true;
  Json rows = Json::array();
  std::vector<std::vector<std::string>> trows;
  for (int d = 1; d <= D; ++d) {
    const Integer lyn(std::to_string(by_lyndon[d]));
    const bool same = by_moebius.at(d) == by_pbw.at(d) && by_pbw.at(d) == lyn;
    ok = ok && same;
    Json e;
    e["degree"] = d;
    e["moebius"] = by_moebius.at(d).get_str();
    e["pbw"] = by_pbw.at(d).get_str();
    e["lyndon"] = lyn.get_str();
    rows.push_back(std::move(e));
    trows.push_back({std::to_string(d), by_moebius.at(d).get_str(), by_pbw.at(d).get_str(), lyn.get_str(), same ? "ok" : "MISMATCH"});
  }
  if (format == "json") {
    Json j;
    j["space"] = format_space(space);
    j["max_degree"] = D;
    j["degrees"] = std::move(rows);
    j["agree"] = ok;
    out << dump(j);
  } else {
    out << table({"degree", "moebius", "pbw", "lyndon", "check"}, trows);
  }
  return ok ? 0 : kFailed;
}

int cmd_verify_cobar(const SpaceModel& space, int D, bool explicit_degree, bool allow_large, const std::string& format,
                     std::ostream& out) {
  CobarLimits limits = cobar_limits_from_env();
  if (allow_large) limits.max_cutoff = std::numeric_limits<int>::max();
  // The default cutoff shrinks to fit the cell cap; an explicit one is honored or refused.
  if (!explicit_degree)
    while (D > 2 && cobar_cell_count(coalgebra_of(space), D) > limits.max_cells) --D;
  const auto report = verify_loop_homology(space, D, limits);
  if (format == "json") {
    out << dump(verification_json(report));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& d : report.degrees)
      rows.push_back({std::to_string(d.degree), d.expected.get_str(), d.observed.rank.get_str(),
                      d.observed.torsion.empty() ? "0" : "Z/" + join(d.observed.torsion, " ⊕ Z/"), d.ok ? "ok" : "MISMATCH"});
    out << table({"degree", "expected rank", "rank", "torsion", "check"}, rows);
    out << fmt::format("space {}, cutoff {}, {} basis words: {}\n", report.space, report.cutoff, report.cells,
                       report.passed() ? "verified" : "FAILED");
    for (const auto& msg : report.discrepancies) out << "discrepancy: " << msg << "\n";
  }
  return report.passed() ? 0 : kFailed;
}

int cmd_moore(const SpaceModel& space, const std::string& format, std::ostream& out) {
  const auto verdict = moore_report(space);
  const auto cls = classify_rational(space);
  if (format == "json") {
    Json j;
    j["space"] = space_json(space);
    j["classification"] = to_string(cls);
    j["moore"] = moore_json(verdict);
    out << dump(j);
  } else {
    out << table({"field", "value"}, {{"space", format_space(space)},
                                      {"classification", to_string(cls)},
                                      {"verdict", to_string(verdict.verdict)}});
    out << "justification: " << verdict.justification << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"looptop: sphere decompositions of loop spaces of highly connected manifolds and two-cell complexes"};
  app.require_subcommand(1);
  std::string format = "table";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json"}));
  };

  int n = 0, betti = 0, max_dim = 10, max_degree = 0;
  long long m = 0;
  std::string matrix, factors, signs, form, space_text;
  bool allow_large = false;

  auto* manifold = app.add_subcommand("manifold", "(n-1)-connected 2n-manifold with middle Betti number r");
  manifold->add_option("--n", n, "half dimension")->required()->check(CLI::Range(2, 1000));
  manifold->add_option("--betti", betti, "middle Betti number r")->required()->check(CLI::Range(1, 200));
  manifold->add_option("--matrix", matrix, "intersection matrix \"a,b;c,d\"");
  manifold->add_option("--max-dim", max_dim, "largest sphere dimension")->check(CLI::Range(2, 200));
  add_format(manifold);

  auto* csum = app.add_subcommand("connected-sum", "connected sum of sphere products");
  csum->add_option("--factors", factors, "factors, e.g. 2x3,2x3")->required();
  csum->add_option("--signs", signs, "orientation signs, e.g. +,-");
  csum->add_option("--max-dim", max_dim, "largest sphere dimension")->check(CLI::Range(2, 200));
  add_format(csum);

  auto* cw = app.add_subcommand("cw", "r n-spheres with one 2n-cell attached");
  cw->add_option("--n", n, "sphere dimension")->required()->check(CLI::Range(2, 1000));
  cw->add_option("--form", form, "cup-product matrix \"a,b;c,d\"")->required();
  cw->add_option("--max-dim", max_dim, "largest sphere dimension")->check(CLI::Range(2, 200));
  add_format(cw);

  auto* betti_one = app.add_subcommand("betti-one", "Hopf-invariant-one manifold, n in {2,4,8}");
  betti_one->add_option("--n", n, "half dimension")->required()->check(CLI::IsMember({2, 4, 8}));
  betti_one->add_option("--m", m, "attaching-map parameter");
  betti_one->add_option("--max-dim", max_dim, "largest sphere dimension")->check(CLI::Range(2, 200));
  add_format(betti_one);

  auto* verify = app.add_subcommand("verify", "cross-checks");
  verify->require_subcommand(1);
  auto* vcobar = verify->add_subcommand("cobar", "cobar-complex homology against the closed-form ranks");
  vcobar->add_option("--space", space_text, "space spec")->required();
  max_degree = 8;
  vcobar->add_option("--max-degree", max_degree, "complex cutoff; homology is reported below it")->check(CLI::Range(2, 64));
  vcobar->add_flag("--allow-large-degree", allow_large, "lift the cutoff cap of 16");
  add_format(vcobar);
  auto* vpipe = verify->add_subcommand("pipelines", "Moebius, PBW and Lyndon counts side by side");
  vpipe->add_option("--space", space_text, "space spec")->required();
  vpipe->add_option("--max-degree", max_degree, "largest degree")->check(CLI::Range(1, 40));
  add_format(vpipe);

  auto* moore = app.add_subcommand("moore", "rational classification and Moore verdict");
  moore->add_option("--space", space_text, "space spec")->required();
  add_format(moore);

  auto* hilbert = app.add_subcommand("hilbert", "irreducible-word counts against the closed-form series");
  hilbert->add_option("--space", space_text, "space spec")->required();
  hilbert->add_option("--max-degree", max_degree, "largest degree")->check(CLI::Range(1, 200));
  add_format(hilbert);

  auto* lie = app.add_subcommand("lie-basis", "standard Lyndon words and their brackets");
  lie->add_option("--space", space_text, "space spec")->required();
  lie->add_option("--max-degree", max_degree, "largest degree")->check(CLI::Range(1, 40));
  add_format(lie);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*manifold) {
      ManifoldModel mm{n, betti, std::nullopt};
      if (!matrix.empty()) mm.matrix = parse_int_matrix(matrix);
      validate(SpaceModel{mm});
      emit_report(decomposition_report(SpaceModel{mm}, max_dim), format, out);
    } else if (*csum) {
      const SpaceModel space = parse_space("csum:" + factors + (signs.empty() ? "" : ":signs=" + signs));
      emit_report(decomposition_report(space, max_dim), format, out);
    } else if (*cw) {
      TwoCellModel x{n, parse_int_matrix(form)};
      validate(SpaceModel{x});
      emit_report(decomposition_report(SpaceModel{x}, max_dim), format, out);
    } else if (*betti_one) {
      if (betti_one->count("--max-dim") == 0) max_dim = 3 * n - 1;
      emit_report(betti_one_report(n, m, max_dim), format, out);
    } else if (*verify) {
      const SpaceModel space = parse_space(space_text);
      if (*vcobar) return cmd_verify_cobar(space, max_degree, vcobar->count("--max-degree") > 0, allow_large, format, out);
      if (vpipe->count("--max-degree") == 0) max_degree = 12;
      return cmd_verify_pipelines(space, max_degree, format, out);
    } else if (*moore) {
      return cmd_moore(parse_space(space_text), format, out);
    } else if (*hilbert) {
      if (hilbert->count("--max-degree") == 0) max_degree = 12;
      return cmd_hilbert(parse_space(space_text), max_degree, format, out);
    } else if (*lie) {
      if (lie->count("--max-degree") == 0) max_degree = 6;
      return cmd_lie_basis(parse_space(space_text), max_degree, format, out);
    }
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace looptop
