#include "fnspace/sv_expr.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace fnspace::svfunc {

using nlohmann::json;

double iterated_log(int level, double u_abs) {
  double v = 1.0 + u_abs;
  for (int i = 1; i < level; ++i) v = 1.0 + std::log(v);
  return v;
}

namespace {

double eval_piece_log(const SvPiece& piece, double u) {
  const double ua = std::fabs(u);
  double log_result = 0.0;  // accumulate in log space
  for (const auto& f : piece.logpow) {
    if (f.level < 1) throw std::invalid_argument("SVExpr: log level must be >= 1");
    log_result += f.alpha * std::log(iterated_log(f.level, ua));
  }
  if (piece.explog) {
    log_result += piece.explog->c * std::pow(ua, piece.explog->a);
  }
  return std::exp(log_result);
}

}  // namespace

SVExpr::SVExpr(SvPiece left, SvPiece right, double scale)
    : left_(std::move(left)), right_(std::move(right)), scale_(scale) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("SVExpr: scale must be positive");
  for (const auto* p : {&left_, &right_}) {
    if (p->explog) {
      const auto& e = *p->explog;
      if (!(e.a > 0.0 && e.a < 1.0))
        throw std::invalid_argument("SVExpr: explog exponent a must lie in (0,1)");
    }
  }
}

double SVExpr::eval(double t) const {
  if (!(t > 0.0)) throw std::domain_error("SVExpr: eval requires t > 0");
  return eval_log(std::log(t));
}

double SVExpr::eval_log(double u) const {
  const SvPiece& piece = u <= 0.0 ? left_ : right_;
  return scale_ * eval_piece_log(piece, u);
}

SVExpr SVExpr::log_power(std::vector<LogPowerFactor> factors, double scale) {
  SvPiece p;
  p.logpow = std::move(factors);
  return SVExpr(p, p, scale);
}

SVExpr SVExpr::broken(double alpha_left, double alpha_right, double scale) {
  SvPiece l, r;
  l.logpow.push_back({1, alpha_left});
  r.logpow.push_back({1, alpha_right});
  return SVExpr(l, r, scale);
}

SVExpr SVExpr::one() { return SVExpr(SvPiece{}, SvPiece{}, 1.0); }

namespace {

json piece_to_json(const SvPiece& p) {
  json arr = json::array();
  for (const auto& f : p.logpow)
    arr.push_back({{"log_level", f.level}, {"alpha", f.alpha}});
  if (p.explog)
    arr.push_back({{"explog", {{"c", p.explog->c}, {"a", p.explog->a}}}});
  return arr;
}

SvPiece piece_from_json(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("SVExpr piece must be an array");
  SvPiece p;
  for (const auto& item : arr) {
    if (item.contains("explog")) {
      if (p.explog) throw std::invalid_argument("SVExpr piece: duplicate explog factor");
      ExpLogFactor e;
      e.c = item.at("explog").at("c").get<double>();
      e.a = item.at("explog").at("a").get<double>();
      p.explog = e;
    } else if (item.contains("log_level")) {
      LogPowerFactor f;
      f.level = item.at("log_level").get<int>();
      f.alpha = item.at("alpha").get<double>();
      p.logpow.push_back(f);
    } else {
      throw std::invalid_argument("SVExpr piece: unknown factor " + item.dump());
    }
  }
  return p;
}

}  // namespace

std::string SVExpr::to_json() const {
  json j;
  j["left"] = piece_to_json(left_);
  j["right"] = piece_to_json(right_);
  j["scale"] = scale_;
  return j.dump();
}

SVExpr SVExpr::from_json(const std::string& text) {
  json j = json::parse(text);
  for (const auto& [key, _] : j.items()) {
    if (key != "left" && key != "right" && key != "scale")
      throw std::invalid_argument("SVExpr: unknown field \"" + key + "\"");
  }
  SvPiece l = piece_from_json(j.at("left"));
  SvPiece r = piece_from_json(j.at("right"));
  const double scale = j.value("scale", 1.0);
  return SVExpr(std::move(l), std::move(r), scale);
}

}  // namespace fnspace::svfunc
