#include "abeloid/json_io.hpp"

#include <cctype>
#include <fstream>

namespace abeloid {

namespace {

BigInt parse_bigint(const std::string& s, const char* what) {
  if (s.empty()) throw ParseError("parse", std::string("empty ") + what);
  std::size_t i = s[0] == '-' || s[0] == '+' ? 1 : 0;
  if (i == s.size()) throw ParseError("parse", std::string("malformed ") + what);
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("parse", std::string("malformed ") + what + ": " + s);
  return BigInt(s);
}

std::pair<BigInt, BigInt> parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return {parse_bigint(s, "rational"), BigInt(1)};
  BigInt num = parse_bigint(s.substr(0, slash), "numerator");
  BigInt den = parse_bigint(s.substr(slash + 1), "denominator");
  if (den == 0) throw ParseError("parse", "rational with zero denominator: " + s);
  return {num, den};
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// split on '+' at parenthesis depth zero
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

// "(a0+a1*x+...)" or a plain integer: residue digit as rational coordinates
std::vector<std::pair<BigInt, BigInt>> parse_digit(const FieldPtr& field, const std::string& s) {
  std::vector<std::pair<BigInt, BigInt>> coords(field->degree(), {BigInt(0), BigInt(1)});
  if (s.empty()) throw ParseError("parse", "empty digit");
  if (s[0] != '(') {
    coords[0].first = parse_bigint(s, "digit");
    return coords;
  }
  if (s.back() != ')') throw ParseError("parse", "unbalanced digit parenthesis: " + s);
  for (const std::string& term : split_terms(s.substr(1, s.size() - 2))) {
    std::size_t star = term.find('*');
    std::size_t xpos = term.find('x');
    BigInt coeff(1);
    int power = 0;
    if (xpos == std::string::npos) {
      coeff = parse_bigint(strip(term), "digit coefficient");
    } else {
      std::string head = strip(star == std::string::npos ? term.substr(0, xpos)
                                                         : term.substr(0, star));
      if (!head.empty()) coeff = parse_bigint(head, "digit coefficient");
      power = 1;
      std::size_t caret = term.find('^', xpos);
      if (caret != std::string::npos)
        power = static_cast<int>(parse_bigint(strip(term.substr(caret + 1)), "digit power"));
    }
    if (power < 0 || power >= field->degree())
      throw ParseError("parse", "digit power out of range: " + term);
    coords[power].first += coeff;
  }
  return coords;
}

// uniformizer spellings accepted in digit-expansion strings
std::size_t find_uniformizer(const std::string& s, std::size_t& len) {
  std::size_t pos = s.find("π");
  if (pos != std::string::npos) {
    len = 2;  // UTF-8 pi
    return pos;
  }
  pos = s.find("pi");
  len = 2;
  return pos;
}

Scalar parse_digit_expansion(const FieldPtr& field, const std::string& s) {
  std::vector<std::pair<int, std::vector<BigInt>>> terms;
  std::optional<int> precision;
  for (const std::string& raw : split_terms(s)) {
    std::string term = strip(raw);
    if (term.empty()) throw ParseError("parse", "empty term in digit expansion");
    if (term[0] == 'O') {
      std::size_t open = term.find('(');
      std::size_t close = term.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close <= open)
        throw ParseError("parse", "malformed precision term: " + term);
      std::string inner = strip(term.substr(open + 1, close - open - 1));
      std::size_t len = 0;
      std::size_t pos = find_uniformizer(inner, len);
      if (pos == std::string::npos) throw ParseError("parse", "malformed precision term: " + term);
      std::size_t caret = inner.find('^', pos + len);
      int m = 1;
      if (caret != std::string::npos)
        m = static_cast<int>(parse_bigint(strip(inner.substr(caret + 1)), "precision"));
      precision = m;
      continue;
    }
    std::size_t len = 0;
    std::size_t pos = find_uniformizer(term, len);
    std::string digit_part = term;
    int expo = 0;
    if (pos != std::string::npos) {
      std::size_t star = term.rfind('*', pos);
      digit_part = strip(star == std::string::npos ? term.substr(0, pos) : term.substr(0, star));
      if (digit_part.empty()) digit_part = "1";
      std::size_t caret = term.find('^', pos + len);
      expo = 1;
      if (caret != std::string::npos) {
        std::string es = strip(term.substr(caret + 1));
        bool neg = !es.empty() && es[0] == '-';
        if (neg) es = es.substr(1);
        expo = static_cast<int>(parse_bigint(es, "exponent"));
        if (neg) expo = -expo;
      }
    }
    std::vector<std::pair<BigInt, BigInt>> coords = parse_digit(field, digit_part);
    std::vector<BigInt> poly(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].second != 1)
        throw ParseError("parse", "digit coefficients must be integers");
      poly[i] = coords[i].first;
    }
    terms.emplace_back(expo, std::move(poly));
  }
  return Scalar::from_term_data(field, terms,
                                precision.value_or(field->precision_cap()));
}

bool looks_like_expansion(const std::string& s) {
  return s.find("O(") != std::string::npos || s.find("π") != std::string::npos ||
         s.find("pi") != std::string::npos || s.find(' ') != std::string::npos;
}

FieldPtr parse_field(const Json& j) {
  if (!j.is_object()) throw ParseError("parse", "field config must be an object");
  FieldConfig cfg;
  if (!j.contains("p")) throw ParseError("parse", "field config needs p");
  cfg.p = j.at("p").get<long>();
  if (!j.contains("precision")) throw ParseError("parse", "field config needs precision");
  cfg.precision = j.at("precision").get<int>();
  if (j.contains("poly")) {
    cfg.poly.clear();
    for (const Json& c : j.at("poly")) {
      auto [num, den] = parse_rational(c.get<std::string>());
      if (den != 1)
        throw ParseError("parse", "defining polynomial must have integral coefficients");
      cfg.poly.push_back(num);
    }
  }
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "unramified")
      cfg.mode = RamificationMode::unramified;
    else if (m == "eisenstein")
      cfg.mode = RamificationMode::eisenstein;
    else
      throw ParseError("parse", "mode must be unramified or eisenstein");
  }
  return Field::make(std::move(cfg));
}

std::vector<Scalar> parse_scalar_list(const FieldPtr& field, const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError("parse", std::string(what) + " must be an array");
  std::vector<Scalar> out;
  for (const Json& v : j) out.push_back(parse_scalar(field, v));
  return out;
}

CharacterTuple parse_character(const FieldPtr& field, const Json& j, const char* what) {
  CharacterTuple chi;
  chi.values = parse_scalar_list(field, j, what);
  return chi;
}

PadicRep parse_rep(const FieldPtr& field, const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("generators"))
    throw ParseError("parse", "rep needs n and generators");
  PadicRep rep;
  rep.n = j.at("n").get<int>();
  for (const Json& m : j.at("generators")) rep.generators.push_back(parse_matrix(field, m));
  if (rep.generators.empty()) throw ParseError("parse", "rep needs at least one generator");
  return rep;
}

HiggsModel parse_higgs(const FieldPtr& field, const Json& j) {
  if (!j.is_object() || !j.contains("blocks"))
    throw ParseError("parse", "higgs needs blocks");
  HiggsModel h;
  for (const Json& bj : j.at("blocks")) {
    HiggsBlock b;
    const Json& line = bj.at("line");
    b.line.analytic_character = parse_character(field, line.at("chi_an"), "chi_an");
    b.line.theta_line = parse_scalar_list(field, line.at("theta"), "theta");
    const Json& uni = bj.at("unipotent");
    b.unipotent.n = uni.at("n").get<int>();
    for (const Json& m : uni.at("analytic_logs"))
      b.unipotent.analytic_logs.push_back(parse_matrix(field, m));
    for (const Json& m : uni.at("higgs_fields"))
      b.unipotent.higgs_fields.push_back(parse_matrix(field, m));
    h.blocks.push_back(std::move(b));
  }
  return h;
}

AbeloidModel parse_model(const FieldPtr& field, int g, const Json& j) {
  if (!j.is_object() || !j.contains("omega_basis") || !j.contains("analytic_basis"))
    throw ParseError("parse", "abeloid model needs omega_basis and analytic_basis");
  AbeloidModel m(g, parse_matrix(field, j.at("omega_basis")),
                 parse_matrix(field, j.at("analytic_basis")));
  if (j.contains("ordinary")) m.ordinary = j.at("ordinary").get<bool>();
  if (j.contains("canonical_directions"))
    for (const Json& d : j.at("canonical_directions"))
      m.canonical_directions.push_back(d.get<int>());
  return m;
}

}  // namespace

Scalar parse_scalar(const FieldPtr& field, const Json& j) {
  if (j.is_number_integer()) return Scalar::from_integer(field, BigInt(j.get<long long>()));
  if (j.is_string()) {
    std::string s = strip(j.get<std::string>());
    if (looks_like_expansion(s)) return parse_digit_expansion(field, s);
    auto [num, den] = parse_rational(s);
    return Scalar::from_rational(field, num, den);
  }
  if (j.is_object() && j.contains("coords")) {
    std::vector<std::pair<BigInt, BigInt>> coords;
    for (const Json& c : j.at("coords")) {
      if (c.is_number_integer())
        coords.emplace_back(BigInt(c.get<long long>()), BigInt(1));
      else
        coords.push_back(parse_rational(c.get<std::string>()));
    }
    return Scalar::from_coords(field, coords);
  }
  throw ParseError("parse", "scalar literal must be a rational string, a coords object, or a "
                            "digit expansion");
}

MatrixK parse_matrix(const FieldPtr& field, const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("parse", "matrix needs rows, cols, entries");
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  const Json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows)
    throw ParseError("parse", "matrix entries have wrong row count");
  MatrixK m(field, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(entries[i].size()) != cols)
      throw ParseError("parse", "matrix entries have wrong column count");
    for (int c = 0; c < cols; ++c) m.at(i, c) = parse_scalar(field, entries[i][c]);
  }
  return m;
}

Instance load_instance(const Json& j) {
  if (!j.is_object()) throw ParseError("parse", "instance must be a JSON object");
  if (!j.contains("field")) throw ParseError("parse", "instance needs a field config");
  Instance inst;
  inst.field = parse_field(j.at("field"));
  int g = j.contains("g") ? j.at("g").get<int>() : 0;
  if (j.contains("abeloid")) {
    if (g <= 0) throw ParseError("parse", "abeloid model needs a positive g");
    inst.model = parse_model(inst.field, g, j.at("abeloid"));
  }
  if (j.contains("rep")) inst.rep = parse_rep(inst.field, j.at("rep"));
  if (j.contains("rep2")) inst.rep2 = parse_rep(inst.field, j.at("rep2"));
  if (j.contains("higgs")) inst.higgs = parse_higgs(inst.field, j.at("higgs"));
  if (j.contains("higgs2")) inst.higgs2 = parse_higgs(inst.field, j.at("higgs2"));
  if (j.contains("cohomology"))
    inst.gammas = parse_scalar_list(inst.field, j.at("cohomology").at("gammas"), "gammas");
  if (j.contains("ext1")) {
    inst.chi1 = parse_character(inst.field, j.at("ext1").at("chi1"), "chi1");
    inst.chi2 = parse_character(inst.field, j.at("ext1").at("chi2"), "chi2");
  }
  if (j.contains("split_ext")) {
    Instance::SplitExtData d;
    d.b = parse_scalar_list(inst.field, j.at("split_ext").at("b"), "b");
    d.theta = parse_scalar_list(inst.field, j.at("split_ext").at("theta"), "theta");
    d.rho_offdiag =
        parse_scalar_list(inst.field, j.at("split_ext").at("rho_offdiag"), "rho_offdiag");
    inst.split_ext = std::move(d);
  }
  // cross-reference consistency
  if (inst.model) {
    const AbeloidModel& m = *inst.model;
    ValidationReport r = m.validate();
    if (!r.pass) throw ParseError("parse", "abeloid model invalid: " + r.first_violation);
    if (inst.rep && inst.rep->num_generators() != 2 * m.g)
      throw ParseError("parse", "rep generator count does not match 2g");
    if (inst.rep2 && inst.rep2->num_generators() != 2 * m.g)
      throw ParseError("parse", "rep2 generator count does not match 2g");
  }
  for (const auto* rep : {inst.rep ? &*inst.rep : nullptr, inst.rep2 ? &*inst.rep2 : nullptr}) {
    if (!rep) continue;
    for (const MatrixK& gen : rep->generators)
      if (gen.rows() != rep->n || gen.cols() != rep->n)
        throw ParseError("parse", "rep generator shape does not match n");
  }
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("parse", "cannot open instance file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("parse", std::string("invalid JSON: ") + e.what());
  }
  return load_instance(j);
}

Json scalar_to_json(const Scalar& s) { return s.to_digit_string(); }

Json matrix_to_json(const MatrixK& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Json rep_to_json(const PadicRep& rep) {
  Json gens = Json::array();
  for (const MatrixK& m : rep.generators) gens.push_back(matrix_to_json(m));
  return Json{{"n", rep.n}, {"generators", std::move(gens)}};
}

Json character_to_json(const CharacterTuple& chi) {
  Json vals = Json::array();
  for (const Scalar& v : chi.values) vals.push_back(scalar_to_json(v));
  return vals;
}

Json higgs_to_json(const HiggsModel& h) {
  Json blocks = Json::array();
  for (const HiggsBlock& b : h.blocks) {
    Json theta = Json::array();
    for (const Scalar& t : b.line.theta_line) theta.push_back(scalar_to_json(t));
    Json logs = Json::array(), fields = Json::array();
    for (const MatrixK& m : b.unipotent.analytic_logs) logs.push_back(matrix_to_json(m));
    for (const MatrixK& m : b.unipotent.higgs_fields) fields.push_back(matrix_to_json(m));
    blocks.push_back(Json{{"line", Json{{"chi_an", character_to_json(b.line.analytic_character)},
                                        {"theta", std::move(theta)}}},
                          {"unipotent", Json{{"n", b.unipotent.n},
                                             {"analytic_logs", std::move(logs)},
                                             {"higgs_fields", std::move(fields)}}}});
  }
  return Json{{"blocks", std::move(blocks)}};
}

Json decomposition_to_json(const BlockDecomposition& d) {
  Json blocks = Json::array();
  for (const RepBlock& b : d.blocks) {
    blocks.push_back(Json{{"character", character_to_json(b.character)},
                          {"size", b.unipotent.n},
                          {"unipotent", rep_to_json(b.unipotent)},
                          {"basis", matrix_to_json(b.basis)}});
  }
  return Json{{"blocks", std::move(blocks)},
              {"change_of_basis", matrix_to_json(d.change_of_basis)}};
}

Json validation_to_json(const ValidationReport& r) {
  Json j{{"valid", r.pass}};
  if (!r.pass) j["first_violation"] = r.first_violation;
  return j;
}

}  // namespace abeloid
