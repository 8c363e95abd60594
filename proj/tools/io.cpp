#include "io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "skewdirac/error.hpp"

namespace skewdirac::cli {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) {
    throw ParseError(std::string("missing field \"") + name + "\"");
  }
  return *it;
}

Index count_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("field \"") + name +
                     "\" must be a non-negative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

void check_schema(const json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  const json& v = field(doc, "schemaVersion");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion) {
    throw ParseError("unsupported schemaVersion (expected \"1\")");
  }
}

Convention convention_from(const json& v) {
  if (v == "continuous") return Convention::kContinuous;
  if (v == "discrete") return Convention::kDiscrete;
  throw ParseError("convention must be \"continuous\" or \"discrete\"");
}

}  // namespace

std::string read_input(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(stdin_stream), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read " + path);
  return buf.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols,
                        const std::string& name) {
  const std::string shape =
      name + " must be " + std::to_string(rows) + "x" + std::to_string(cols);
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw ParseError(shape);
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ParseError(shape);
    }
    for (Index k = 0; k < cols; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        throw ParseError(name + " entries must be [re, im] number pairs");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json quadruple_to_json(const AdmissibleQuadruple& q) {
  return json{{"schemaVersion", kSchemaVersion},
              {"n", q.n()},
              {"m1", q.m1()},
              {"m2", q.m2()},
              {"alpha", matrix_to_json(q.alpha())},
              {"s0", matrix_to_json(q.s0())},
              {"theta1", matrix_to_json(q.theta1())},
              {"theta2", matrix_to_json(q.theta2())}};
}

AdmissibleQuadruple quadruple_from_json(const json& doc) {
  check_schema(doc);
  const Index n = count_field(doc, "n");
  const Index m1 = count_field(doc, "m1");
  const Index m2 = count_field(doc, "m2");
  if (n == 0) return AdmissibleQuadruple::empty(m1, m2);
  Matrix alpha = matrix_from_json(field(doc, "alpha"), n, n, "alpha");
  Matrix s0 = matrix_from_json(field(doc, "s0"), n, n, "s0");
  Matrix t1 = matrix_from_json(field(doc, "theta1"), n, m1, "theta1");
  Matrix t2 = matrix_from_json(field(doc, "theta2"), n, m2, "theta2");
  try {
    return AdmissibleQuadruple(std::move(alpha), std::move(s0), std::move(t1),
                               std::move(t2));
  } catch (const Error& e) {
    throw ParseError(e.what());  // shape or non-finite entries
  }
}

json realization_to_json(const StateSpaceRealization& r) {
  return json{{"schemaVersion", kSchemaVersion},
              {"convention", to_string(r.convention())},
              {"rows", r.rows()},
              {"cols", r.cols()},
              {"gamma", matrix_to_json(r.gamma())},
              {"inputMap", matrix_to_json(r.input())},
              {"outputMap", matrix_to_json(r.output())}};
}

StateSpaceRealization realization_from_json(const json& doc) {
  check_schema(doc);
  const Convention conv = convention_from(field(doc, "convention"));
  const json& g = field(doc, "gamma");
  if (!g.is_array()) throw ParseError("gamma must be an array");
  const Index n = static_cast<Index>(g.size());
  // rows/cols are only needed to shape a degree-zero function.
  Index rows = 0;
  Index cols = 0;
  if (n == 0 || doc.contains("rows")) rows = count_field(doc, "rows");
  if (n == 0 || doc.contains("cols")) cols = count_field(doc, "cols");
  if (n > 0) {
    const json& in = field(doc, "inputMap");
    const json& out = field(doc, "outputMap");
    const Index in_cols = in.is_array() && !in.empty() && in[0].is_array()
                              ? static_cast<Index>(in[0].size())
                              : -1;
    const Index out_rows = out.is_array() ? static_cast<Index>(out.size()) : -1;
    if (!doc.contains("cols")) cols = in_cols;
    if (!doc.contains("rows")) rows = out_rows;
    if (rows < 0 || cols < 0) throw ParseError("inputMap/outputMap malformed");
    Matrix gamma = matrix_from_json(g, n, n, "gamma");
    Matrix input = matrix_from_json(in, n, cols, "inputMap");
    Matrix output = matrix_from_json(out, rows, n, "outputMap");
    try {
      return StateSpaceRealization(std::move(gamma), std::move(input),
                                   std::move(output), conv);
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  return StateSpaceRealization::zero(rows, cols, conv);
}

std::string format_number(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_header(const std::vector<std::string>& leading,
                       const std::string& name, Index rows, Index cols) {
  std::string h;
  for (const std::string& l : leading) {
    if (!h.empty()) h += ',';
    h += l;
  }
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const std::string e =
          name + "_" + std::to_string(i + 1) + "_" + std::to_string(k + 1);
      h += ',' + e + "_re," + e + "_im";
    }
  }
  return h;
}

std::string csv_row(const std::vector<double>& leading, const Matrix& m) {
  std::string r;
  for (double l : leading) {
    if (!r.empty()) r += ',';
    r += format_number(l);
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      r += ',' + format_number(m(i, k).real()) + ',' +
           format_number(m(i, k).imag());
    }
  }
  return r;
}

}  // namespace skewdirac::cli
