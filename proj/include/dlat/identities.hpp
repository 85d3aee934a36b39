#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace dlat {

using Params = std::map<std::string, std::string>;

// The computed side always comes from enumeration plus exact Euler or
// homology computation; the formula side is evaluated independently.
struct IdentityReport {
  std::string name;
  Params params;
  nlohmann::json computed;
  nlohmann::json formula;
  nlohmann::json detail;  // supporting data, not compared
  bool pass = false;
  double ms = 0;
};

std::vector<std::string> identity_names();
// UnknownIdentityError for an unregistered name, ParseError for bad params.
IdentityReport run_identity(const std::string& name, const Params& params = {});
nlohmann::json report_to_json(const IdentityReport& r);

// f_n for n in {1,2,3}: exact interpolation of brute-force values over
// GF(q)^n, q = 2..5; coefficients from degree 0 upward.
const std::vector<mpq_class>& f_polynomial(int n);
mpq_class evaluate(const std::vector<mpq_class>& poly, const mpq_class& x);

std::int64_t derangements(int m);

}  // namespace dlat
