#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "skewdirac/quadruple.hpp"
#include "skewdirac/realization.hpp"

namespace skewdirac::cli {

inline constexpr const char* kSchemaVersion = "1";

// Unreadable input or a document that does not match its schema (exit 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a whole file, or standard input for "-".
std::string read_input(const std::string& path, std::istream& stdin_stream);
nlohmann::json parse_json(const std::string& text);

// Matrices are row-major nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                        const std::string& field);
nlohmann::json complex_to_json(Complex c);

nlohmann::json quadruple_to_json(const AdmissibleQuadruple& q);
AdmissibleQuadruple quadruple_from_json(const nlohmann::json& j);

nlohmann::json realization_to_json(const StateSpaceRealization& r);
StateSpaceRealization realization_from_json(const nlohmann::json& j);

// 17 significant digits, '.' separator regardless of locale.
std::string format_number(double v);

// Header "x,v_1_1_re,v_1_1_im,v_1_2_re,..." with entries row-major.
std::string csv_header(const std::vector<std::string>& leading,
                       const std::string& name, Index rows, Index cols);
std::string csv_row(const std::vector<double>& leading, const Matrix& m);

}  // namespace skewdirac::cli
