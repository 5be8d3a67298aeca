#include "entcap/channel_io.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

namespace entcap {

Matrix matrix_from_json(const nlohmann::json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument(what + " is not a non-empty list of rows");
  const std::size_t n_rows = rows.size();
  std::size_t n_cols = 0;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.empty())
      throw std::invalid_argument(what + " row " + std::to_string(i) +
                                  " is not a non-empty list of entries");
    if (i == 0)
      n_cols = row.size();
    else if (row.size() != n_cols)
      throw std::invalid_argument(what + " row " + std::to_string(i) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(n_cols));
  }
  Matrix m(static_cast<Index>(n_rows), static_cast<Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t j = 0; j < n_cols; ++j) {
      const auto& entry = rows[i][j];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw std::invalid_argument(what + " entry (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") is not a two-element [re, im] pair");
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(nlohmann::json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

QuantumChannel channel_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("channel spec: document is not a JSON object");
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string())
      throw std::invalid_argument("channel spec: 'preset' is not a string");
    std::vector<double> params;
    if (doc.contains("params")) {
      if (!doc["params"].is_array())
        throw std::invalid_argument("channel spec: 'params' is not a list of reals");
      for (const auto& p : doc["params"]) {
        if (!p.is_number())
          throw std::invalid_argument("channel spec: 'params' entry is not a number");
        params.push_back(p.get<double>());
      }
    }
    return preset(doc["preset"].get<std::string>(), params);
  }
  if (!doc.contains("kraus"))
    throw std::invalid_argument("channel spec: expected either 'preset' or 'kraus'");
  if (!doc["kraus"].is_array() || doc["kraus"].empty())
    throw std::invalid_argument("channel spec: 'kraus' is not a non-empty list of matrices");

  std::vector<Matrix> kraus;
  for (std::size_t k = 0; k < doc["kraus"].size(); ++k)
    kraus.push_back(matrix_from_json(doc["kraus"][k], "kraus[" + std::to_string(k) + "]"));

  if (doc.contains("dim_in") && doc["dim_in"].get<Index>() != kraus.front().cols())
    throw std::invalid_argument("channel spec: kraus[0] has " +
                                std::to_string(kraus.front().cols()) +
                                " columns but dim_in is " +
                                std::to_string(doc["dim_in"].get<Index>()));
  if (doc.contains("dim_out") && doc["dim_out"].get<Index>() != kraus.front().rows())
    throw std::invalid_argument("channel spec: kraus[0] has " +
                                std::to_string(kraus.front().rows()) +
                                " rows but dim_out is " +
                                std::to_string(doc["dim_out"].get<Index>()));
  return make_channel(std::move(kraus), doc.value("name", std::string("channel")));
}

nlohmann::json channel_to_json(const QuantumChannel& c) {
  nlohmann::json doc;
  doc["name"] = c.name;
  doc["dim_in"] = c.dim_in;
  doc["dim_out"] = c.dim_out;
  nlohmann::json kraus = nlohmann::json::array();
  for (const Matrix& k : c.kraus) kraus.push_back(matrix_to_json(k));
  doc["kraus"] = std::move(kraus);
  return doc;
}

QuantumChannel load_channel_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("load_channel_spec: cannot read " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    // e.what() carries "at line L, column C" context from the parser.
    throw std::invalid_argument("load_channel_spec: " + path.string() + ": " + e.what());
  }
  return channel_from_json(doc);
}

void save_channel_spec(const QuantumChannel& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("save_channel_spec: cannot write " + path.string());
  out << channel_to_json(c).dump(2) << '\n';
}

}  // namespace entcap
