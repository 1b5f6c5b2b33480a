#pragma once

#include <json.hpp>

#include "paracount/formula.hpp"

namespace paracount {

using Json = nlohmann::ordered_json;

Json poly_to_json(const QPoly& p);
Json qrat_to_json(const QRat& r);
Json report_to_json(const VerifyReport& rep);

// parse "t^2+t+1" style monic polynomials with prime-subfield coefficients
FPoly parse_poly(const FqField& F, const std::string& text);

// "1,1;2" -> {{1,1},{2}}
Multipartition parse_multipartition(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// flatten a JSON report into key,value CSV lines
std::string json_to_csv(const Json& j);

}  // namespace paracount
