#include "pumbo/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

namespace pumbo {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  return s.substr(b);
}

double parse_cell(const std::string& cell, std::size_t line_no,
                  const std::string& name) {
  const std::string c = strip(cell);
  double v;
  const auto* begin = c.data();
  const auto* end = c.data() + c.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw DataError(name + ": non-numeric cell at line " +
                    std::to_string(line_no) + ": '" + c + "'");
  return v;
}

}  // namespace

PointSet load_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw DataError(name + ": empty file");

  auto header = split_line(strip(line));
  bool has_values = !header.empty() && strip(header.back()) == "f";
  const std::size_t d = header.size() - (has_values ? 1 : 0);
  if (d < 1) throw DataError(name + ": missing header");
  for (std::size_t a = 0; a < d; ++a) {
    if (strip(header[a]) != "x" + std::to_string(a + 1))
      throw DataError(name + ": bad header, expected x" +
                      std::to_string(a + 1) + " got '" + strip(header[a]) + "'");
  }

  std::vector<double> coords;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty()) continue;
    const auto cells = split_line(s);
    if (cells.size() != header.size())
      throw DataError(name + ": ragged row at line " + std::to_string(line_no) +
                      " (" + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header.size()) + ")");
    for (std::size_t a = 0; a < d; ++a)
      coords.push_back(parse_cell(cells[a], line_no, name));
    if (has_values) values.push_back(parse_cell(cells[d], line_no, name));
  }
  if (coords.empty()) throw DataError(name + ": no data rows");

  PointSet ps;
  const auto n = static_cast<Eigen::Index>(coords.size() / d);
  ps.points.resize(n, static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a)
      ps.points(i, static_cast<Eigen::Index>(a)) = coords[i * d + a];
  if (has_values)
    ps.values = Eigen::Map<Eigen::VectorXd>(values.data(), n);

  return deduplicate(ps);
}

PointSet load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_csv(in, path);
}

void save_csv(const PointSet& ps, std::ostream& out) {
  const Eigen::Index d = ps.dim();
  for (Eigen::Index a = 0; a < d; ++a) {
    out << "x" << (a + 1);
    if (a + 1 < d || ps.has_values()) out << ',';
  }
  if (ps.has_values()) out << 'f';
  out << '\n';

  char buf[64];
  auto write_num = [&](double v, char sep) {
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    out.write(buf, len);
    out.put(sep);
  };
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    for (Eigen::Index a = 0; a < d; ++a)
      write_num(ps.points(i, a), a + 1 < d || ps.has_values() ? ',' : '\n');
    if (ps.has_values()) write_num((*ps.values)[i], '\n');
  }
}

void save_csv(const PointSet& ps, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  save_csv(ps, out);
}

double franke_f1(double x1, double x2) {
  const double a = 0.75 * std::exp(-(std::pow(9 * x1 - 2, 2) / 4.0 +
                                     std::pow(9 * x2 - 2, 2) / 4.0));
  const double b = 0.75 * std::exp(-(std::pow(9 * x1 - 2, 2) / 49.0 +
                                     (9 * x2 + 1) / 10.0));
  const double c = 0.5 * std::exp(-(std::pow(9 * x1 - 7, 2) / 4.0 +
                                    std::pow(9 * x2 - 3, 2) / 4.0));
  const double e = 0.2 * std::exp(-(std::pow(9 * x1 - 4, 2) +
                                    std::pow(9 * x2 - 7, 2)));
  return a + b + c - e;
}

double trig_f2(double x1, double x2) {
  return 2.0 * std::cos(10.0 * x1) * std::sin(10.0 * x2) +
         std::sin(10.0 * x1 * x2);
}

PointSet gen_testdata(const std::string& fn_id, Eigen::Index n,
                      std::uint64_t seed) {
  double (*fn)(double, double) = nullptr;
  if (fn_id == "f1") fn = franke_f1;
  else if (fn_id == "f2") fn = trig_f2;
  else throw ConfigError("unknown test function: " + fn_id);
  if (n < 1) throw ConfigError("gen_testdata: n must be >= 1");

  Rng rng(seed);
  PointSet ps;
  ps.points.resize(n, 2);
  ps.values = Eigen::VectorXd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x1 = rng.next_double();
    const double x2 = rng.next_double();
    ps.points(i, 0) = x1;
    ps.points(i, 1) = x2;
    (*ps.values)[i] = fn(x1, x2);
  }
  return ps;
}

std::pair<PointSet, PointSet> split_points(const PointSet& ps,
                                           Eigen::Index n_test,
                                           std::uint64_t seed) {
  if (n_test < 0 || n_test > ps.size())
    throw ConfigError("split_points: bad test size");

  std::vector<Eigen::Index> perm(ps.size());
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  Rng rng(seed);
  // Fisher-Yates
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.next_below(i)]);

  auto take = [&](Eigen::Index begin, Eigen::Index count) {
    PointSet out;
    out.points.resize(count, ps.dim());
    if (ps.has_values()) out.values = Eigen::VectorXd(count);
    for (Eigen::Index k = 0; k < count; ++k) {
      out.points.row(k) = ps.points.row(perm[begin + k]);
      if (ps.has_values()) (*out.values)[k] = (*ps.values)[perm[begin + k]];
    }
    return out;
  };
  return {take(n_test, ps.size() - n_test), take(0, n_test)};
}

}  // namespace pumbo
