#include "integrable/io.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>

#include "integrable/error.hpp"
#include "integrable/grading.hpp"
#include "integrable/parse.hpp"

namespace integrable::io {

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string canonical_text(const FlowRecord& f) {
  return std::string(to_string(f.family)) + " " + std::to_string(f.base) + " " + std::to_string(f.order) + " " +
         print(f.rhs);
}

std::string checksum(const FlowRecord& f) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_text(f))));
  return buf;
}

namespace {

Var var_from_name(const std::string& name) {
  if (name == "a") return Var::a();
  if (name == "ab") return Var::ab();
  if (name.size() > 1 && name[0] == 'u') {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
    if (digits) return Var::jet(std::stoi(name.substr(1)));
  }
  if (name == "u") return Var::jet(0);
  return Var::constant(name);
}

Json provenance_json(const Provenance& p) {
  struct V {
    Json operator()(const Seed& s) const { return {{"kind", "seed"}, {"label", s.label}}; }
    Json operator()(const Generated& g) const {
      return {{"kind", "generated"}, {"from_order", g.from_order}, {"lambda", to_string(g.lambda)}};
    }
    Json operator()(const Symmetry& s) const { return {{"kind", "symmetry"}, {"seed_order", s.seed_order}}; }
  };
  return std::visit(V{}, p);
}

Provenance provenance_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "seed") return Seed{j.at("label").get<std::string>()};
  if (kind == "generated")
    return Generated{j.at("from_order").get<int>(), parse_rational(j.at("lambda").get<std::string>())};
  if (kind == "symmetry") return Symmetry{j.at("seed_order").get<int>()};
  throw Error("unknown provenance kind '" + kind + "'");
}

std::string provenance_code(const Provenance& p) {
  struct V {
    std::string operator()(const Seed& s) const { return "seed:" + s.label; }
    std::string operator()(const Generated& g) const {
      return "generated:" + std::to_string(g.from_order) + ":" + to_string(g.lambda);
    }
    std::string operator()(const Symmetry& s) const { return "symmetry:" + std::to_string(s.seed_order); }
  };
  return std::visit(V{}, p);
}

Provenance provenance_from_code(const std::string& code) {
  const auto colon = code.find(':');
  if (colon == std::string::npos) throw Error("malformed provenance '" + code + "'");
  const std::string kind = code.substr(0, colon), rest = code.substr(colon + 1);
  if (kind == "seed") return Seed{rest};
  if (kind == "symmetry") return Symmetry{std::stoi(rest)};
  if (kind == "generated") {
    const auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw Error("malformed provenance '" + code + "'");
    return Generated{std::stoi(rest.substr(0, c2)), parse_rational(rest.substr(c2 + 1))};
  }
  throw Error("unknown provenance kind '" + kind + "'");
}

void check_sum(const FlowRecord& f, const std::string& stored) {
  if (stored != checksum(f))
    throw Error("checksum mismatch for " + std::string(to_string(f.family)) + " b=" + std::to_string(f.base) +
                " order " + std::to_string(f.order));
}

}  // namespace

Json to_json(const DiffPoly& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms()) {
    Json exps = Json::object();
    for (const auto& f : t.mono.factors()) exps[f.var.name()] = f.exp;
    terms.push_back({{"coeff", to_string(t.coeff)}, {"exps", exps}});
  }
  return terms;
}

DiffPoly poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error("polynomial must be a JSON array");
  std::vector<Term> raw;
  for (const auto& t : j) {
    Monomial m;
    for (const auto& [name, exp] : t.at("exps").items()) m.mul(var_from_name(name), exp.get<int>());
    raw.push_back({parse_rational(t.at("coeff").get<std::string>()), std::move(m)});
  }
  return canonicalize(std::move(raw), kRingMaxJetOrder);
}

Json to_json(const FlowRecord& f) {
  return {{"family", std::string(to_string(f.family))},
          {"base", f.base},
          {"order", f.order},
          {"rhs", to_json(f.rhs)},
          {"provenance", provenance_json(f.provenance)},
          {"checksum", checksum(f)}};
}

FlowRecord flow_from_json(const Json& j) {
  try {
    FlowRecord f{parse_family(j.at("family").get<std::string>()), j.at("base").get<int>(), j.at("order").get<int>(),
                 poly_from_json(j.at("rhs")), provenance_from_json(j.at("provenance"))};
    if (j.contains("checksum")) check_sum(f, j.at("checksum").get<std::string>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed flow record: ") + e.what());
  }
}

Json catalog_json(const std::vector<FlowRecord>& flows) {
  Json list = Json::array();
  for (const auto& f : flows) list.push_back(to_json(f));
  return {{"flows", list}};
}

std::vector<FlowRecord> catalog_from_json(const Json& j) {
  if (!j.contains("flows")) throw Error("catalog has no 'flows' array");
  std::vector<FlowRecord> out;
  for (const auto& r : j.at("flows")) out.push_back(flow_from_json(r));
  return out;
}

std::string catalog_text(const std::vector<FlowRecord>& flows) {
  std::string out;
  for (const auto& f : flows) {
    out += std::string(to_string(f.family)) + '\t' + std::to_string(f.base) + '\t' + std::to_string(f.order) + '\t' +
           provenance_code(f.provenance) + '\t' + checksum(f) + '\t' + print(f.rhs) + '\n';
  }
  return out;
}

std::vector<FlowRecord> catalog_from_text(std::string_view text) {
  std::vector<FlowRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 6) throw Error("line " + std::to_string(lineno) + ": expected 6 tab-separated fields");
    FlowRecord f{parse_family(cols[0]), std::stoi(cols[1]), std::stoi(cols[2]), parse(cols[5], kRingMaxJetOrder),
                 provenance_from_code(cols[3])};
    check_sum(f, cols[4]);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

void latex_factor(std::string& out, Var v, int exp, int base) {
  if (!out.empty() && out.back() != ' ') out += ' ';
  if (v == Var::a()) {
    out += "a";
  } else if (v == Var::ab()) {
    out += "a_{" + std::to_string(base) + "}";
  } else if (v.is_jet()) {
    out += "u_{" + std::to_string(v.order()) + "}";
  } else {
    out += v.name();
  }
  if (exp != 1) out += "^{" + std::to_string(exp) + "}";
}

std::string latex_rational(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

}  // namespace

std::string latex(const DiffPoly& e, int base) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    Rational c = t.coeff;
    if (sgn(c) < 0) {
      out += first ? "-" : " - ";
      c = -c;
    } else if (!first) {
      out += " + ";
    }
    first = false;
    std::string body;
    auto emit = [&](auto pred) {
      for (const auto& f : t.mono.factors())
        if (pred(f.var)) latex_factor(body, f.var, f.exp, base);
    };
    emit([](Var v) { return v.is_coeff(); });
    emit([](Var v) { return v.is_const(); });
    emit([](Var v) { return v.is_jet(); });
    if (body.empty()) {
      out += latex_rational(c);
    } else if (c == 1) {
      out += body;
    } else {
      out += latex_rational(c) + " " + body;
    }
  }
  return out;
}

std::string catalog_latex(const std::vector<FlowRecord>& flows) {
  std::string out;
  for (const auto& f : flows)
    out += "u_{t," + std::to_string(f.order) + "} &=& " + latex(f.rhs, f.base) + "\\\\\n";
  return out;
}

DiffPoly parse_latex(std::string_view text, int base) {
  std::string grammar;
  bool last_atom = false;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, i); };
  auto braced = [&]() {
    if (i >= text.size() || text[i] != '{') fail("expected '{'");
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) fail("unterminated '{'");
    std::string inner(text.substr(i + 1, close - i - 1));
    i = close + 1;
    return inner;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '+' || c == '-') {
      grammar += c;
      last_atom = false;
      ++i;
      continue;
    }
    std::string atom;
    if (text.substr(i, 5) == "\\frac") {
      i += 5;
      const std::string num = braced();
      const std::string den = braced();
      atom = "(" + num + "/" + den + ")";
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) atom += text[i++];
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) atom += text[i++];
      if (i < text.size() && text[i] == '_') {
        ++i;
        const std::string sub = braced();
        if (atom == "u") {
          atom = "u" + sub;
        } else if (atom == "a" && sub == std::to_string(base)) {
          atom = "ab";
        } else {
          fail("unexpected subscript on '" + atom + "'");
        }
      }
    } else {
      fail(std::string("unexpected '") + c + "'");
    }
    if (i < text.size() && text[i] == '^') {
      ++i;
      atom += "^(" + braced() + ")";
    }
    if (last_atom) grammar += '*';
    grammar += atom;
    last_atom = true;
  }
  return parse(grammar, kRingMaxJetOrder);
}

Json to_json(const Erratum& e) {
  return {{"family", std::string(to_string(e.family))},
          {"base", e.base},
          {"item", e.item},
          {"kind", e.kind},
          {"published", e.published},
          {"derived", e.derived},
          {"detail", e.detail}};
}

Json errata_json(const std::vector<Erratum>& errata) {
  Json list = Json::array();
  for (const auto& e : errata) list.push_back(to_json(e));
  return {{"errata", list}};
}

Json to_json(const PseudoDiffOperator& op) {
  Json local = Json::object();
  for (const auto& [k, c] : op.local) local[std::to_string(k)] = print(c);
  Json nonlocal = Json::array();
  for (const auto& n : op.nonlocal) nonlocal.push_back({{"sigma", print(n.sigma)}, {"gamma", print(n.gamma)}});
  return {{"local", local}, {"nonlocal", nonlocal}};
}

CatalogCheck verify_catalog(const std::vector<FlowRecord>& flows) {
  CatalogCheck check;
  auto problem = [&](const FlowRecord& f, const std::string& what) {
    check.ok = false;
    check.problems.push_back(std::string(to_string(f.family)) + " b=" + std::to_string(f.base) + " order " +
                             std::to_string(f.order) + ": " + what);
  };
  std::map<std::pair<Family, int>, int> top;
  for (const auto& f : flows) {
    auto& t = top[{f.family, f.base}];
    t = std::max(t, f.order);
  }
  for (const auto& f : flows) {
    if (!is_level_homogeneous(f.rhs, f.base, f.order - f.base)) problem(f, "not level homogeneous");
    const auto h = generate_hierarchy(f.family, f.base, top.at({f.family, f.base}));
    bool found = false;
    for (const auto& g : h) {
      if (g.order != f.order) continue;
      found = true;
      if (!(g.rhs == f.rhs)) problem(f, "differs from the regenerated flow");
      if (checksum(g) != checksum(f)) problem(f, "checksum differs from the regenerated flow");
    }
    if (!found) problem(f, "order not present in the regenerated hierarchy");
  }
  return check;
}

}  // namespace integrable::io
