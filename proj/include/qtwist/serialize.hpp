#pragma once

#include <string>

#include <json.hpp>

#include "qtwist/connect.hpp"
#include "qtwist/divpow.hpp"
#include "qtwist/errors.hpp"

namespace qtwist {

using Json = nlohmann::json;

/// Malformed input. `where` is a byte offset for syntax errors or a JSON pointer otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string where)
      : Error(what + " at " + where), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Json to_json(const QPoly& f);
Json to_json(const LocScalar& z);
Json to_json(const CoordPoly& f);
Json to_json(const DPContext& ctx);
Json to_json(const DPElem& e);
Json to_json(const ConnModule& mod);

QPoly qpoly_from_json(const Json& j, const std::string& path = "");
LocScalar scalar_from_json(const Json& j, int p, const std::string& path = "");
CoordPoly coordpoly_from_json(const Json& j, int p, const std::string& path = "");
DPContext context_from_json(const Json& j, const std::string& path = "");
DPElem dpelem_from_json(const Json& j, const std::string& path = "");
ConnModule connmodule_from_json(const Json& j, const std::string& path = "");

/// Parses text, turning syntax errors into ParseError with the byte position.
Json parse_json(const std::string& text);

}  // namespace qtwist
