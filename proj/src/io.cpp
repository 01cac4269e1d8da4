#include "hill/io.hpp"

#include <fstream>
#include <sstream>

#include "hill/errors.hpp"

namespace hill {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

Expression expression(const json& v, const char* what) {
  if (!v.is_string()) throw ParseError(std::string(what) + " must be an expression string");
  return Expression::parse(v.get<std::string>());
}

double resolve_period(const json& doc, std::optional<double> override_value) {
  const bool has = doc.is_object() && doc.contains("period");
  if (has && override_value) throw ParseError("--period-override given but the file specifies a period");
  if (has) return number(doc.at("period"), "period");
  if (override_value) return *override_value;
  throw ParseError("missing field \"period\"");
}

}  // namespace

PeriodicCoefficient coefficient_from_json(const json& doc, std::optional<double> period_override) {
  if (!doc.is_object()) throw ParseError("coefficient document must be a JSON object");
  const double period = resolve_period(doc, period_override);
  const json& list = field(doc, "pieces");
  if (!list.is_array()) throw ParseError("\"pieces\" must be an array");
  std::vector<Piece> pieces;
  for (const json& p : list) {
    Expression e = expression(field(p, "expr"), "piece expr");
    if (e.depends_on(Variable::U)) throw ParseError("coefficient expressions may not use u");
    pieces.push_back({number(field(p, "from"), "piece from"), number(field(p, "to"), "piece to"), std::move(e)});
  }
  std::vector<double> removable;
  if (doc.contains("removable")) {
    const json& r = doc.at("removable");
    if (!r.is_array()) throw ParseError("\"removable\" must be an array");
    for (const json& v : r) removable.push_back(number(v, "removable point"));
  }
  return PeriodicCoefficient(period, std::move(pieces), std::move(removable));
}

json coefficient_to_json(const PeriodicCoefficient& a) {
  json pieces = json::array();
  for (const Piece& p : a.pieces()) pieces.push_back({{"from", p.from}, {"to", p.to}, {"expr", p.expr.to_string()}});
  return {{"period", a.period()}, {"pieces", pieces}, {"removable", a.removable_points()}};
}

ProblemFile problem_from_json(const json& doc, std::optional<double> period_override) {
  if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
  const double period = resolve_period(doc, period_override);
  Expression f = expression(field(doc, "f"), "f");
  std::optional<Expression> fu;
  if (doc.contains("fu") && !doc.at("fu").is_null()) fu = expression(doc.at("fu"), "fu");
  ProblemFile out{NonlinearProblem(std::move(f), period, std::move(fu)), std::nullopt};
  const bool has_alpha = doc.contains("alpha_env");
  const bool has_beta = doc.contains("beta_env");
  if (has_alpha != has_beta) throw ParseError("alpha_env and beta_env must be given together");
  if (has_alpha) {
    const auto env = [&](const char* key) {
      const json& e = doc.at(key);
      return coefficient_from_json(e, e.contains("period") ? std::nullopt : std::optional<double>(period));
    };
    out.problem.set_envelopes(env("alpha_env"), env("beta_env"));
  }
  if (doc.contains("u_box")) {
    const json& b = doc.at("u_box");
    if (!b.is_array() || b.size() != 2) throw ParseError("\"u_box\" must be [lo, hi]");
    out.u_box = UBox{number(b[0], "u_box"), number(b[1], "u_box")};
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace hill
