#include "orthobias/csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace orthobias {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

bool parse_double(const std::string& s, double& value) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

std::vector<std::vector<std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file", path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.size() < 2) throw IoError("file needs a header and at least one row", path);
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw IoError("ragged row in file", path);
  return rows;
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<Eigen::VectorXd>& columns) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file", path);
  out.precision(17);
  for (size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  const Eigen::Index n = columns.empty() ? 0 : columns[0].size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << columns[j](i);
    out << '\n';
  }
  if (!out) throw IoError("write failed", path);
}

std::vector<Eigen::VectorXd> matrix_columns(const Eigen::MatrixXd& m) {
  std::vector<Eigen::VectorXd> cols;
  for (Eigen::Index j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return cols;
}

json loan_params_json(const LoanParams& p) {
  return json{{"lambda_e0", p.lambda_e0}, {"lambda_e1", p.lambda_e1}, {"lambda_e2", p.lambda_e2},
              {"lambda_a0", p.lambda_a0}, {"lambda_a1", p.lambda_a1}, {"lambda_a2", p.lambda_a2},
              {"beta0", p.beta0},         {"beta1", p.beta1},         {"beta2", p.beta2},
              {"beta_e", p.beta_e},       {"beta_i", p.beta_i},       {"n", p.n},
              {"seed", p.seed}};
}

LoanParams loan_params_from_json(const json& j) {
  LoanParams p;
  p.lambda_e0 = j.at("lambda_e0");
  p.lambda_e1 = j.at("lambda_e1");
  p.lambda_e2 = j.at("lambda_e2");
  p.lambda_a0 = j.at("lambda_a0");
  p.lambda_a1 = j.at("lambda_a1");
  p.lambda_a2 = j.at("lambda_a2");
  p.beta0 = j.at("beta0");
  p.beta1 = j.at("beta1");
  p.beta2 = j.at("beta2");
  p.beta_e = j.at("beta_e");
  p.beta_i = j.at("beta_i");
  p.n = j.at("n");
  p.seed = j.at("seed");
  return p;
}

}  // namespace

void write_matrix_csv(const std::string& path, const DataMatrix& m) {
  write_table(path, m.col_names(), matrix_columns(m.matrix()));
}

DataMatrix read_matrix_csv(const std::string& path) {
  auto rows = read_table(path);
  const size_t ncol = rows[0].size();
  const size_t nrow = rows.size() - 1;
  Eigen::MatrixXd m(nrow, ncol);
  for (size_t i = 0; i < nrow; ++i)
    for (size_t j = 0; j < ncol; ++j) {
      double v;
      if (!parse_double(rows[i + 1][j], v))
        throw IoError("non-numeric cell '" + rows[i + 1][j] + "' at row " + std::to_string(i + 1),
                      path);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  return DataMatrix(std::move(m), rows[0]);
}

void write_dataset(const std::string& prefix, const Dataset& ds) {
  std::vector<std::string> header = ds.a.col_names();
  std::vector<Eigen::VectorXd> cols = matrix_columns(ds.a.matrix());
  for (size_t j = 0; j < ds.b.col_names().size(); ++j) {
    header.push_back(ds.b.col_names()[j]);
    cols.push_back(ds.b.matrix().col(static_cast<Eigen::Index>(j)));
  }
  if (ds.groups) {
    header.push_back("group");
    Eigen::VectorXd g(ds.a.rows());
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = (*ds.groups)[static_cast<size_t>(i)];
    cols.push_back(g);
  }
  header.push_back("Y");
  cols.push_back(ds.y);
  write_table(prefix + ".csv", header, cols);

  json meta;
  meta["sensitive"] = ds.b.col_names();
  meta["outcome"] = "Y";
  meta["binary_outcome"] = ds.binary_y;
  meta["descendant_cols"] = ds.descendant_cols;
  if (ds.groups) meta["group_column"] = "group";
  if (ds.loan_params) meta["loan_params"] = loan_params_json(*ds.loan_params);

  if (ds.loan_noise) {
    write_table(prefix + ".noise.csv", {"u_b", "z_e", "z_i", "u_y"},
                {ds.loan_noise->u_b, ds.loan_noise->z_e, ds.loan_noise->z_i, ds.loan_noise->u_y});
    meta["noise"] = "loan";
  } else if (ds.cont_y_noise) {
    std::vector<std::string> nh;
    std::vector<Eigen::VectorXd> nc;
    for (Eigen::Index j = 0; j < ds.cont_y_noise->eps_a.cols(); ++j) {
      nh.push_back("eps_a" + std::to_string(j + 1));
      nc.push_back(ds.cont_y_noise->eps_a.col(j));
    }
    nh.push_back("eps_y");
    nc.push_back(ds.cont_y_noise->eps_y);
    write_table(prefix + ".noise.csv", nh, nc);
    meta["noise"] = "cont_y";
  }

  std::ofstream mout(prefix + ".meta.json");
  if (!mout) throw IoError("cannot write file", prefix + ".meta.json");
  mout << meta.dump(2) << '\n';
}

Dataset read_dataset(const std::string& prefix) {
  std::ifstream min(prefix + ".meta.json");
  if (!min) throw IoError("cannot open sidecar", prefix + ".meta.json");
  json meta = json::parse(min);

  DataMatrix table = read_matrix_csv(prefix + ".csv");
  auto sensitive = meta.at("sensitive").get<std::vector<std::string>>();
  std::string outcome = meta.at("outcome").get<std::string>();
  std::string group_col = meta.value("group_column", std::string());

  std::set<std::string> non_feature(sensitive.begin(), sensitive.end());
  non_feature.insert(outcome);
  if (!group_col.empty()) non_feature.insert(group_col);

  std::vector<std::string> a_names;
  std::vector<Eigen::Index> a_idx;
  for (size_t j = 0; j < table.col_names().size(); ++j)
    if (!non_feature.count(table.col_names()[j])) {
      a_names.push_back(table.col_names()[j]);
      a_idx.push_back(static_cast<Eigen::Index>(j));
    }

  Eigen::MatrixXd a(table.rows(), a_idx.size());
  for (size_t j = 0; j < a_idx.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = table.matrix().col(a_idx[j]);
  Eigen::MatrixXd b(table.rows(), sensitive.size());
  for (size_t j = 0; j < sensitive.size(); ++j)
    b.col(static_cast<Eigen::Index>(j)) = table.matrix().col(table.col_index(sensitive[j]));
  Eigen::VectorXd y = table.matrix().col(table.col_index(outcome));

  Dataset ds(DataMatrix(std::move(a), a_names), DataMatrix(std::move(b), sensitive), std::move(y),
             meta.value("binary_outcome", false));
  ds.descendant_cols = meta.value("descendant_cols", a_names);

  if (!group_col.empty()) {
    std::vector<int> groups(static_cast<size_t>(table.rows()));
    Eigen::VectorXd g = table.matrix().col(table.col_index(group_col));
    for (Eigen::Index i = 0; i < g.size(); ++i)
      groups[static_cast<size_t>(i)] = static_cast<int>(std::lround(g(i)));
    ds.groups = std::move(groups);
  }
  if (meta.contains("loan_params")) ds.loan_params = loan_params_from_json(meta["loan_params"]);

  std::string noise_kind = meta.value("noise", std::string());
  if (!noise_kind.empty()) {
    DataMatrix noise = read_matrix_csv(prefix + ".noise.csv");
    if (noise_kind == "loan") {
      ds.loan_noise = LoanNoise{noise.matrix().col(noise.col_index("u_b")),
                                noise.matrix().col(noise.col_index("z_e")),
                                noise.matrix().col(noise.col_index("z_i")),
                                noise.matrix().col(noise.col_index("u_y"))};
    } else if (noise_kind == "cont_y") {
      Eigen::MatrixXd eps_a(noise.rows(), noise.cols() - 1);
      for (Eigen::Index j = 0; j + 1 < noise.cols(); ++j) eps_a.col(j) = noise.matrix().col(j);
      ds.cont_y_noise = ContYNoise{std::move(eps_a), noise.matrix().col(noise.cols() - 1)};
    }
  }
  return ds;
}

Dataset ingest_csv(const std::string& path, const std::vector<std::string>& sensitive_cols,
                   const std::string& outcome_col) {
  if (sensitive_cols.empty()) throw InvalidParams("at least one sensitive column is required");
  auto rows = read_table(path);
  const auto& header = rows[0];
  const size_t nrow = rows.size() - 1;

  auto col_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError("no column named " + name, path);
    return static_cast<size_t>(it - header.begin());
  };

  struct Encoded {
    std::vector<std::string> names;
    std::vector<Eigen::VectorXd> cols;
    std::vector<std::string> categories;  // nonempty when one-hot encoded
  };

  // Numeric columns pass through; categorical ones become one-hot indicators
  // with the first sorted category as the reference level.
  auto encode = [&](size_t c) {
    Encoded e;
    std::vector<double> numeric(nrow);
    bool is_numeric = true;
    for (size_t i = 0; i < nrow && is_numeric; ++i)
      is_numeric = parse_double(rows[i + 1][c], numeric[i]);
    if (is_numeric) {
      e.names.push_back(header[c]);
      e.cols.emplace_back(Eigen::Map<Eigen::VectorXd>(numeric.data(), static_cast<Eigen::Index>(nrow)));
      return e;
    }
    std::set<std::string> cats;
    for (size_t i = 0; i < nrow; ++i) cats.insert(rows[i + 1][c]);
    if (cats.size() < 2) throw ZeroVarianceColumn(header[c]);
    e.categories.assign(cats.begin(), cats.end());
    for (size_t k = 1; k < e.categories.size(); ++k) {
      Eigen::VectorXd v(static_cast<Eigen::Index>(nrow));
      for (size_t i = 0; i < nrow; ++i)
        v(static_cast<Eigen::Index>(i)) = rows[i + 1][c] == e.categories[k] ? 1.0 : 0.0;
      e.names.push_back(header[c] + "=" + e.categories[k]);
      e.cols.push_back(std::move(v));
    }
    return e;
  };

  std::set<std::string> special(sensitive_cols.begin(), sensitive_cols.end());
  special.insert(outcome_col);

  std::vector<std::string> a_names;
  std::vector<Eigen::VectorXd> a_cols;
  for (size_t c = 0; c < header.size(); ++c) {
    if (special.count(header[c])) continue;
    Encoded e = encode(c);
    a_names.insert(a_names.end(), e.names.begin(), e.names.end());
    a_cols.insert(a_cols.end(), e.cols.begin(), e.cols.end());
  }

  std::vector<std::string> b_names;
  std::vector<Eigen::VectorXd> b_cols;
  std::optional<std::vector<int>> groups;
  for (size_t s = 0; s < sensitive_cols.size(); ++s) {
    size_t c = col_of(sensitive_cols[s]);
    Encoded e = encode(c);
    b_names.insert(b_names.end(), e.names.begin(), e.names.end());
    b_cols.insert(b_cols.end(), e.cols.begin(), e.cols.end());
    if (s == 0) {
      // Discrete group labels from the first sensitive column when it has a
      // small number of levels.
      if (!e.categories.empty()) {
        std::vector<int> g(nrow);
        std::map<std::string, int> index;
        for (size_t k = 0; k < e.categories.size(); ++k) index[e.categories[k]] = static_cast<int>(k);
        for (size_t i = 0; i < nrow; ++i) g[i] = index[rows[i + 1][c]];
        groups = std::move(g);
      } else {
        std::set<double> lv(e.cols[0].data(), e.cols[0].data() + e.cols[0].size());
        if (lv.size() >= 2 && lv.size() <= 20) {
          std::vector<double> sorted(lv.begin(), lv.end());
          std::vector<int> g(nrow);
          for (size_t i = 0; i < nrow; ++i)
            g[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                     e.cols[0](static_cast<Eigen::Index>(i))) -
                                    sorted.begin());
          groups = std::move(g);
        }
      }
    }
  }

  size_t yc = col_of(outcome_col);
  Eigen::VectorXd y(static_cast<Eigen::Index>(nrow));
  bool binary = true;
  {
    std::vector<double> numeric(nrow);
    bool is_numeric = true;
    for (size_t i = 0; i < nrow && is_numeric; ++i)
      is_numeric = parse_double(rows[i + 1][yc], numeric[i]);
    if (is_numeric) {
      for (size_t i = 0; i < nrow; ++i) {
        y(static_cast<Eigen::Index>(i)) = numeric[i];
        binary = binary && (numeric[i] == 0.0 || numeric[i] == 1.0);
      }
    } else {
      std::set<std::string> cats;
      for (size_t i = 0; i < nrow; ++i) cats.insert(rows[i + 1][yc]);
      if (cats.size() != 2)
        throw IoError("categorical outcome must have exactly two levels", path);
      const std::string& positive = *cats.rbegin();
      for (size_t i = 0; i < nrow; ++i)
        y(static_cast<Eigen::Index>(i)) = rows[i + 1][yc] == positive ? 1.0 : 0.0;
    }
  }

  auto build = [&](std::vector<std::string> names, std::vector<Eigen::VectorXd> cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(nrow), static_cast<Eigen::Index>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
    return DataMatrix(std::move(m), std::move(names));
  };

  Dataset ds(build(a_names, a_cols), build(b_names, b_cols), std::move(y), binary);
  ds.groups = std::move(groups);
  ds.descendant_cols = a_names;  // no causal model for ingested data
  return ds;
}

}  // namespace orthobias
