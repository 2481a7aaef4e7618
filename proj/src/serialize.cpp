#include "qtwist/serialize.hpp"

#include "qtwist/qanalog.hpp"

namespace qtwist {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& path) {
  throw ParseError(what, path.empty() ? "/" : path);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"", path);
  return *it;
}

int int_field(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_number_integer()) fail("expected an integer", path + "/" + key);
  return v.get<int>();
}

Side side_field(const Json& j, const std::string& path) {
  const Json& v = field(j, "side", path);
  if (!v.is_string()) fail("expected \"A\" or \"A'\"", path + "/side");
  try {
    return side_from_name(v.get<std::string>());
  } catch (const Error&) {
    fail("expected \"A\" or \"A'\"", path + "/side");
  }
}

XPoly xpoly_from_json(const Json& j, int p, const std::string& path) {
  if (!j.is_array()) fail("expected an array of scalars", path);
  std::vector<LocScalar> c;
  for (size_t i = 0; i < j.size(); ++i)
    c.push_back(scalar_from_json(j[i], p, path + "/" + std::to_string(i)));
  return XPoly(std::move(c));
}

Json xpoly_to_json(const XPoly& f) {
  Json arr = Json::array();
  for (const auto& c : f.coeffs()) arr.push_back(to_json(c));
  return arr;
}

}  // namespace

Json to_json(const QPoly& f) {
  Json arr = Json::array();
  for (const auto& c : f.coeffs()) arr.push_back(c.get_str());
  return arr;
}

Json to_json(const LocScalar& z) { return {{"num", to_json(z.num())}, {"den", to_json(z.den())}}; }

Json to_json(const CoordPoly& f) {
  return {{"side", side_name(f.side())}, {"coeffs", xpoly_to_json(f.poly())}};
}

Json to_json(const DPContext& ctx) {
  Json j{{"p", ctx.p}, {"side", side_name(ctx.side)}};
  if (ctx.symbol == "omega" && ctx.same_algebra(DPContext::level(ctx.p, ctx.m, ctx.side))) {
    j["kind"] = "level";
    j["m"] = ctx.m;
    return j;
  }
  for (int r = 0; r <= 3; ++r) {
    if (ctx.symbol == "xi" && ctx.same_algebra(DPContext::divided(ctx.p, r, ctx.side))) {
      j["kind"] = "divided";
      j["r"] = r;
      return j;
    }
  }
  j["kind"] = "generic";
  j["q_power"] = ctx.q_power;
  j["twist"] = xpoly_to_json(ctx.twist);
  j["symbol"] = ctx.symbol;
  return j;
}

Json to_json(const DPElem& e) {
  Json terms = Json::object();
  for (const auto& [n, c] : e.terms()) terms[std::to_string(n)] = to_json(CoordPoly(e.ctx().side, c));
  return {{"ctx", to_json(e.ctx())}, {"terms", terms}};
}

Json to_json(const ConnModule& mod) {
  Json theta = Json::array();
  for (const auto& row : mod.theta) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(to_json(CoordPoly(mod.side, f)));
    theta.push_back(r);
  }
  return {{"ctx", {{"p", mod.p}, {"m", mod.m}}},
          {"side", side_name(mod.side)},
          {"rank", mod.rank},
          {"theta", theta}};
}

QPoly qpoly_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail("expected an array of decimal strings", path);
  std::vector<Integer> c;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "/" + std::to_string(i);
    if (j[i].is_number_integer()) {
      c.emplace_back(j[i].get<long>());
      continue;
    }
    if (!j[i].is_string()) fail("expected a decimal string", at);
    Integer v;
    const std::string s = j[i].get<std::string>();
    if (s.empty() || v.set_str(s, 10) != 0) fail("invalid integer \"" + s + "\"", at);
    c.push_back(v);
  }
  return QPoly(std::move(c));
}

LocScalar scalar_from_json(const Json& j, int p, const std::string& path) {
  if (j.is_number_integer()) return LocScalar(j.get<long>());
  if (j.is_array()) return LocScalar(qpoly_from_json(j, path));
  const QPoly num = qpoly_from_json(field(j, "num", path), path + "/num");
  QPoly den(1);
  if (j.contains("den")) den = qpoly_from_json(j["den"], path + "/den");
  try {
    return LocScalar::from_fraction(num, den, p);
  } catch (const Error& err) {
    fail(err.what(), path);
  }
}

CoordPoly coordpoly_from_json(const Json& j, int p, const std::string& path) {
  const Side side = side_field(j, path);
  return {side, xpoly_from_json(field(j, "coeffs", path), p, path + "/coeffs")};
}

DPContext context_from_json(const Json& j, const std::string& path) {
  const int p = int_field(j, "p", path);
  const Side side = j.contains("side") ? side_field(j, path) : Side::A;
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail("expected a string", path + "/kind");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "level") return DPContext::level(p, int_field(j, "m", path), side);
    if (k == "divided") return DPContext::divided(p, j.contains("r") ? int_field(j, "r", path) : 0, side);
    if (k == "generic") {
      validate_prime(p);
      std::string symbol = "xi";
      if (j.contains("symbol") && j["symbol"].is_string()) symbol = j["symbol"].get<std::string>();
      return DPContext::generic(p, int_field(j, "q_power", path),
                                xpoly_from_json(field(j, "twist", path), p, path + "/twist"), side,
                                symbol);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    fail(err.what(), path);
  }
  fail("unknown context kind \"" + k + "\"", path + "/kind");
}

DPElem dpelem_from_json(const Json& j, const std::string& path) {
  const DPContext ctx = context_from_json(field(j, "ctx", path), path + "/ctx");
  const Json& terms = field(j, "terms", path);
  if (!terms.is_object()) fail("expected an object", path + "/terms");
  DPElem e(ctx);
  for (const auto& [key, val] : terms.items()) {
    const std::string at = path + "/terms/" + key;
    int n = -1;
    try {
      size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size()) n = -1;
    } catch (const std::exception&) {
      n = -1;
    }
    if (n < 0) fail("term index must be a non-negative integer", at);
    const CoordPoly c = coordpoly_from_json(val, ctx.p, at);
    if (c.side() != ctx.side) fail("coefficient side differs from the context side", at + "/side");
    try {
      e.add_term(n, c.poly());
    } catch (const Error& err) {
      fail(err.what(), at);
    }
  }
  return e;
}

ConnModule connmodule_from_json(const Json& j, const std::string& path) {
  const Json& ctx = field(j, "ctx", path);
  ConnModule mod;
  mod.p = int_field(ctx, "p", path + "/ctx");
  mod.m = int_field(ctx, "m", path + "/ctx");
  mod.side = side_field(j, path);
  mod.rank = int_field(j, "rank", path);
  const Json& theta = field(j, "theta", path);
  if (!theta.is_array()) fail("expected an array of rows", path + "/theta");
  for (size_t i = 0; i < theta.size(); ++i) {
    const std::string row_at = path + "/theta/" + std::to_string(i);
    if (!theta[i].is_array()) fail("expected an array", row_at);
    Vec row;
    for (size_t k = 0; k < theta[i].size(); ++k) {
      const std::string at = row_at + "/" + std::to_string(k);
      const CoordPoly c = coordpoly_from_json(theta[i][k], mod.p, at);
      if (c.side() != mod.side) fail("entry side differs from the module side", at + "/side");
      row.push_back(c.poly());
    }
    mod.theta.push_back(std::move(row));
  }
  try {
    mod.validate();
  } catch (const Error& err) {
    fail(err.what(), path);
  }
  return mod;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw ParseError(err.what(), "byte " + std::to_string(err.byte));
  }
}

}  // namespace qtwist
