#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "integrable/densities.hpp"
#include "integrable/derive.hpp"
#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/hierarchy.hpp"
#include "integrable/io.hpp"
#include "integrable/parse.hpp"

using namespace integrable;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct Options {
  std::string family = "skk";
  int base = 5;
  int max_order = 11;
  std::string format = "text";
  std::string out;
};

Family family_of(const Options& o) { return parse_family(o.family); }

void emit(const Options& o, const std::string& doc) {
  if (o.out.empty()) {
    std::cout << doc;
    if (!doc.empty() && doc.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error("cannot write " + o.out);
  f << doc;
  if (!doc.empty() && doc.back() != '\n') f << '\n';
}

std::string render(const Options& o, const std::vector<FlowRecord>& flows) {
  if (o.format == "json") return io::catalog_json(flows).dump(2);
  if (o.format == "latex") return io::catalog_latex(flows);
  return io::catalog_text(flows);
}

std::string render_poly(const Options& o, const DiffPoly& e) {
  if (o.format == "json") return io::to_json(e).dump(2);
  if (o.format == "latex") return io::latex(e, o.base);
  return print(e);
}

const FlowRecord& flow_of_order(const std::vector<FlowRecord>& h, int order) {
  for (const auto& f : h)
    if (f.order == order) return f;
  throw Unsupported("no flow of order " + std::to_string(order) + " in this hierarchy");
}

int cmd_partitions(const Options& o, int n) {
  const auto ps = partitions(n);
  if (o.format == "json") {
    io::Json rows = io::Json::array();
    for (const auto& p : ps) rows.push_back(p.multiplicity);
    emit(o, io::Json{{"n", n}, {"count", ps.size()}, {"rows", rows}}.dump(2));
    return kOk;
  }
  std::string doc = o.format == "latex" ? "\\begin{pmatrix}\n" : "";
  for (const auto& p : ps) {
    std::string row;
    for (std::size_t j = 0; j < p.multiplicity.size(); ++j) {
      if (j) row += o.format == "latex" ? " & " : " ";
      row += std::to_string(p.multiplicity[j]);
    }
    doc += row + (o.format == "latex" ? " \\\\\n" : "\n");
  }
  if (o.format == "latex") doc += "\\end{pmatrix}\n";
  emit(o, doc);
  return kOk;
}

int cmd_level_monomials(const Options& o, int b, int n) {
  const auto ms = level_monomials(b, n);
  if (o.format == "json") {
    io::Json list = io::Json::array();
    for (const auto& m : ms) list.push_back(print(m.monomial()));
    emit(o, io::Json{{"base", b}, {"level", n}, {"monomials", list}}.dump(2));
    return kOk;
  }
  std::string doc;
  for (const auto& m : ms)
    doc += (o.format == "latex" ? io::latex(canonicalize({Term{Rational(1), m.monomial()}}), b) : print(m.monomial())) + "\n";
  emit(o, doc);
  return kOk;
}

// Pairwise commutators and conservation of a^-1 along every flow.
bool verify_hierarchy(const std::vector<FlowRecord>& h) {
  bool ok = true;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const DiffPoly c = commutator(h[i], h[j]);
      if (!c.is_zero()) {
        ok = false;
        std::cerr << "commutator of orders " << h[i].order << " and " << h[j].order << " is nonzero\n";
      }
    }
    const auto cons = check_conserved(parse("a^-1"), h[i].rhs, h[i].context());
    if (!cons.conserved) {
      ok = false;
      std::cerr << "a^-1 is not conserved along order " << h[i].order << "\n";
    }
  }
  return ok;
}

int cmd_hierarchy(const Options& o, const std::string& errata_path) {
  const Family fam = family_of(o);
  const auto h = generate_hierarchy(fam, o.base, o.max_order);
  const bool ok = verify_hierarchy(h);
  emit(o, render(o, h));
  if (!errata_path.empty()) {
    std::ofstream f(errata_path, std::ios::binary);
    if (!f) throw Error("cannot write " + errata_path);
    f << io::errata_json(errata(fam, o.base)).dump(2) << '\n';
  }
  std::cerr << (ok ? "verified " : "verification FAILED for ") << h.size() << " flows\n";
  return ok ? kOk : kFailed;
}

int cmd_apply_r(const Options& o, int order) {
  const Family fam = family_of(o);
  const auto h = generate_hierarchy(fam, o.base, std::max(order, o.max_order));
  const FlowRecord& f = flow_of_order(h, order);
  const FlowRecord g = apply_recursion(recursion_operator(fam, o.base), f);
  const DiffPoly c = commutator(h.front(), g);
  emit(o, render(o, {g}));
  if (!c.is_zero()) {
    std::cerr << "R applied to order " << order << " does not commute with the seed\n";
    return kFailed;
  }
  return kOk;
}

int cmd_commutator(const Options& o, const std::vector<int>& orders) {
  if (orders.size() != 2) throw CLI::ValidationError("--orders", "expects exactly two orders M1,M2");
  const Family fam = family_of(o);
  const auto h = generate_hierarchy(fam, o.base, std::max({orders[0], orders[1], o.max_order}));
  const DiffPoly c = commutator(flow_of_order(h, orders[0]), flow_of_order(h, orders[1]));
  emit(o, render_poly(o, c));
  return c.is_zero() ? kOk : kFailed;
}

int cmd_check_density(const Options& o, int rho, const std::string& span_text) {
  const Family fam = family_of(o);
  const auto h = generate_hierarchy(fam, o.base, o.max_order);
  const JetContext ctx(fam, o.base);
  bool ok = true;
  io::Json report = io::Json::array();
  std::string text;
  auto record = [&](const FlowRecord& f, const std::string& density, bool conserved, const std::string& extra) {
    ok = ok && conserved;
    report.push_back({{"order", f.order}, {"density", density}, {"ok", conserved}, {"detail", extra}});
    text += "order " + std::to_string(f.order) + "\t" + density + "\t" + (conserved ? "ok" : "FAILED") +
            (extra.empty() ? "" : "\t" + extra) + "\n";
  };
  if (rho == -1 || rho == 1) {
    const DiffPoly d = rho == -1 ? parse("a^-1") : parse("a^-1*ab^2*u" + std::to_string(o.base + 1) + "^2");
    for (const auto& f : h) {
      const auto c = check_conserved(d, f.rhs, ctx);
      record(f, print(d), c.conserved, c.conserved ? "" : "residual " + print(c.residual));
    }
  } else if (rho == 3) {
    MonomialSpan span;
    if (!span_text.empty()) {
      std::istringstream in(span_text);
      char sep;
      if (!(in >> span.a_min >> sep >> span.a_max >> sep >> span.ab_min >> sep >> span.ab_max >> sep >> span.p_min >>
            sep >> span.p_max))
        throw CLI::ValidationError("--span", "expects amin,amax,abmin,abmax,pmin,pmax");
    }
    const Density ansatz = density_ansatz({DensityKind::Rho3}, ctx, "c", span);
    // KdV type has a nontrivial rho^(3); for SKK type every conserved instance is trivial.
    const bool expect_nontrivial = fam == Family::KdV;
    for (const auto& f : h) {
      const auto nontrivial = nontrivial_conserved_instances(ansatz, f.rhs, ctx);
      const std::string found = nontrivial.empty() ? "trivial" : print(nontrivial.front());
      record(f, found, nontrivial.empty() != expect_nontrivial,
             std::to_string(nontrivial.size()) + " nontrivial");
    }
  } else {
    throw CLI::ValidationError("--rho", "must be -1, 1 or 3");
  }
  emit(o, o.format == "json" ? report.dump(2) : text);
  return ok ? kOk : kFailed;
}

int cmd_potentiate(const Options& o) {
  const auto h = generate_hierarchy(family_of(o), o.base, o.max_order);
  std::vector<FlowRecord> out;
  for (const auto& f : h) out.push_back(potentiate(f));
  Options shifted = o;
  shifted.base = o.base - 1;
  emit(shifted, render(shifted, out));
  return kOk;
}

int cmd_derive_r(const Options& o, const std::string& errata_path) {
  const Family fam = family_of(o);
  const auto d = derive_recursion_coefficients(fam, o.base);
  const auto all_errata = errata(fam, o.base);
  if (o.format == "json") {
    emit(o, io::Json{{"operator", io::to_json(d.op.op)},
                     {"unknowns", d.unknowns},
                     {"equations", d.equations},
                     {"rank", d.rank},
                     {"consistent", d.consistent},
                     {"witness_order", d.witness_order},
                     {"witness", d.witness},
                     {"errata", io::errata_json(all_errata)["errata"]}}
                .dump(2));
  } else {
    std::string doc;
    for (auto it = d.op.op.local.rbegin(); it != d.op.op.local.rend(); ++it)
      doc += "D^" + std::to_string(it->first) + "\t" + render_poly(o, it->second) + "\n";
    for (const auto& n : d.op.op.nonlocal)
      doc += "D^-1\t" + render_poly(o, n.sigma) + "\t" + render_poly(o, n.gamma) + "\n";
    doc += "unknowns " + std::to_string(d.unknowns) + ", equations " + std::to_string(d.equations) + ", rank " +
           std::to_string(d.rank) + ", consistent " + (d.consistent ? "yes" : "no") + ", witness order " +
           std::to_string(d.witness_order) + " " + (d.witness ? "ok" : "FAILED") + "\n";
    for (const auto& e : all_errata)
      doc += "erratum\t" + e.item + "\t" + e.kind + "\t" + e.published + "\t->\t" + e.derived + "\n";
    emit(o, doc);
  }
  if (!errata_path.empty()) {
    std::ofstream f(errata_path, std::ios::binary);
    if (!f) throw Error("cannot write " + errata_path);
    f << io::errata_json(all_errata).dump(2) << '\n';
  }
  return d.consistent && d.witness ? kOk : kFailed;
}

int cmd_frechet(const Options& o, const std::string& expr) {
  const JetContext ctx(family_of(o), o.base);
  const auto op = frechet(parse(expr, ctx.max_order()), ctx);
  if (o.format == "json") {
    emit(o, io::to_json(op).dump(2));
    return kOk;
  }
  std::string doc;
  for (auto it = op.local.rbegin(); it != op.local.rend(); ++it)
    doc += "D^" + std::to_string(it->first) + "\t" + render_poly(o, it->second) + "\n";
  if (doc.empty()) doc = "0\n";
  emit(o, doc);
  return kOk;
}

int cmd_verify_catalog(const Options& o, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  const std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const auto first = content.find_first_not_of(" \t\r\n");
  const auto flows = first != std::string::npos && content[first] == '{'
                         ? io::catalog_from_json(io::Json::parse(content))
                         : io::catalog_from_text(content);
  const auto check = io::verify_catalog(flows);
  std::string doc;
  for (const auto& p : check.problems) doc += p + "\n";
  doc += (check.ok ? "ok: " : "FAILED: ") + std::to_string(flows.size()) + " flows\n";
  emit(o, doc);
  return check.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrable evolution equations with non-constant separant"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--family", o.family, "kdv or skk")
      ->check(CLI::IsMember({"kdv", "skk"}, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--base", o.base, "base level b")->check(CLI::Range(3, 5))->capture_default_str();
  app.add_option("--max-order", o.max_order, "highest flow order")->check(CLI::Range(3, 61))->capture_default_str();
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "write the document here instead of stdout");

  int n = 0, b = 0, order = 0, rho = 0;
  std::vector<int> orders;
  std::string expr, path, errata_path, span;

  auto* partitions_cmd = app.add_subcommand("partitions", "partitions of N as multiplicity rows");
  partitions_cmd->add_option("N", n)->required()->check(CLI::Range(1, 40));
  auto* level_cmd = app.add_subcommand("level-monomials", "monomials of level N above base B");
  level_cmd->add_option("B", b)->required()->check(CLI::Range(0, 64));
  level_cmd->add_option("N", n)->required()->check(CLI::Range(1, 40));
  auto* seed_cmd = app.add_subcommand("seed", "seed flow");
  auto* hierarchy_cmd = app.add_subcommand("hierarchy", "generate, verify and emit the flow catalog");
  hierarchy_cmd->add_option("--errata", errata_path, "also write the errata as JSON");
  auto* apply_cmd = app.add_subcommand("apply-r", "apply the recursion operator to a flow");
  apply_cmd->add_option("--order", order)->required();
  auto* comm_cmd = app.add_subcommand("commutator", "commutator of two flows");
  comm_cmd->add_option("--orders", orders)->required()->delimiter(',')->expected(2);
  auto* density_cmd = app.add_subcommand("check-density", "test a canonical density along every flow");
  density_cmd->add_option("--rho", rho)->required()->check(CLI::IsMember({-1, 1, 3}));
  density_cmd->add_option("--span", span, "rho 3 coefficient span amin,amax,abmin,abmax,pmin,pmax");
  auto* pot_cmd = app.add_subcommand("potentiate", "potential form v = u_1 of every flow");
  auto* derive_cmd = app.add_subcommand("derive-r", "solve for the recursion operator and list errata");
  derive_cmd->add_option("--errata", errata_path, "also write the errata as JSON");
  auto* frechet_cmd = app.add_subcommand("frechet", "Frechet derivative of an expression");
  frechet_cmd->add_option("--expr", expr)->required();
  auto* verify_cmd = app.add_subcommand("verify-catalog", "re-verify a JSON or text catalog");
  verify_cmd->add_option("PATH", path)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*partitions_cmd) return cmd_partitions(o, n);
    if (*level_cmd) return cmd_level_monomials(o, b, n);
    if (*seed_cmd) {
      emit(o, render(o, {seed_flow(family_of(o), o.base)}));
      return kOk;
    }
    if (*hierarchy_cmd) return cmd_hierarchy(o, errata_path);
    if (*apply_cmd) return cmd_apply_r(o, order);
    if (*comm_cmd) return cmd_commutator(o, orders);
    if (*density_cmd) return cmd_check_density(o, rho, span);
    if (*pot_cmd) return cmd_potentiate(o);
    if (*derive_cmd) return cmd_derive_r(o, errata_path);
    if (*frechet_cmd) return cmd_frechet(o, expr);
    if (*verify_cmd) return cmd_verify_catalog(o, path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const OrderUnderflow& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
