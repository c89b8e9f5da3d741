#pragma once

// Independent reference implementations used to cross-check the library.
// None of these call into the code under test.

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace oracles {

/// Ridge weights by dense Cholesky on the normal equations. With an
/// intercept, the bias is an extra all-ones column whose diagonal entry in
/// the penalty is zero. Returns weights followed by the bias when present.
inline std::vector<double> closed_form_ridge(const std::vector<std::vector<double>>& x,
                                             const std::vector<double>& y, double alpha, bool intercept) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto d = static_cast<Eigen::Index>(x.empty() ? 0 : x[0].size());
  const Eigen::Index p = d + (intercept ? 1 : 0);
  Eigen::MatrixXd a(n, p);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = x[i][j];
    if (intercept) a(i, d) = 1.0;
    b(i) = y[i];
  }
  Eigen::MatrixXd gram = a.transpose() * a;
  for (Eigen::Index j = 0; j < d; ++j) gram(j, j) += alpha;
  Eigen::VectorXd w = gram.ldlt().solve(a.transpose() * b);
  return {w.data(), w.data() + w.size()};
}

/// Band lookup written straight from the rules file layout:
/// {nutrient: [{lower, upper|null, margin_kind, margin}, ...]}.
/// A reference on a breakpoint belongs to the upper band unless
/// `upper_inclusive`, in which case it belongs to the lower one.
class BandTable {
 public:
  struct Row {
    double lower;
    double upper;
    bool relative;
    double margin;
  };

  BandTable(const nlohmann::json& file, bool upper_inclusive) : upper_inclusive_(upper_inclusive) {
    for (const auto& [nutrient, rows] : file.items()) {
      auto& out = table_[nutrient];
      for (const auto& r : rows) {
        double upper = r["upper"].is_null() ? std::numeric_limits<double>::infinity() : r["upper"].get<double>();
        out.push_back({r["lower"].get<double>(), upper, r["margin_kind"] == "relative_fraction",
                       r["margin"].get<double>()});
      }
    }
  }

  std::vector<std::string> nutrients() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : table_) out.push_back(k);
    return out;
  }

  bool accept(const std::string& nutrient, double reference, double predicted) const {
    const Row* hit = nullptr;
    for (const auto& row : table_.at(nutrient)) {
      bool inside = upper_inclusive_ ? (reference > row.lower || (reference == 0.0 && row.lower == 0.0)) &&
                                           reference <= row.upper
                                     : reference >= row.lower && reference < row.upper;
      if (inside) {
        hit = &row;
        break;
      }
    }
    if (hit == nullptr) return false;
    double m = hit->relative ? hit->margin * reference : hit->margin;
    double lo = reference - m < 0.0 ? 0.0 : reference - m;
    return predicted >= lo && predicted <= reference + m;
  }

 private:
  std::map<std::string, std::vector<Row>> table_;
  bool upper_inclusive_;
};

}  // namespace oracles
