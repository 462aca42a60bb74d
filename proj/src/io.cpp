#include "comet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace comet {

DegreeDistribution read_degree_distribution(std::istream& in) {
  DegreeDistribution dd;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string side;
    if (!(ls >> side)) continue;
    if (side.empty() || side[0] == '#') continue;
    int degree = 0;
    double value = 0.0;
    if (!(ls >> degree >> value)) {
      throw std::runtime_error("degree file: malformed line: " + line);
    }
    if (side == "v") {
      dd.lambda[degree] += value;
    } else if (side == "c") {
      dd.rho[degree] += value;
    } else {
      throw std::runtime_error("degree file: side must be 'v' or 'c'");
    }
  }
  dd.validate(1e-9);
  return dd;
}

void write_degree_distribution(std::ostream& out, const DegreeDistribution& dd) {
  for (const auto& [i, v] : dd.lambda) out << "v " << i << " " << format_sig12(v) << "\n";
  for (const auto& [i, v] : dd.rho) out << "c " << i << " " << format_sig12(v) << "\n";
}

DegreeDistribution parse_degree_spec(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma != std::string::npos && spec.find(',', comma + 1) == std::string::npos) {
    try {
      const int dv = std::stoi(spec.substr(0, comma));
      const int dc = std::stoi(spec.substr(comma + 1));
      return DegreeDistribution::regular(dv, dc);
    } catch (const std::invalid_argument&) {
      // fall through to file handling
    }
  }
  std::ifstream f(spec);
  if (!f) throw std::runtime_error("cannot open degree file: " + spec);
  return read_degree_distribution(f);
}

VolterraKernel read_volterra_kernel(std::istream& in) {
  VolterraKernel k;
  k.order = 1;
  int max_tap = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag.empty() || tag[0] == '#') continue;
    if (tag == "h0") {
      if (!(ls >> k.h0)) throw std::runtime_error("kernel file: bad h0 line");
    } else if (tag == "h1") {
      int i;
      double v;
      if (!(ls >> i >> v)) throw std::runtime_error("kernel file: bad h1 line");
      k.h1[i] += v;
      max_tap = std::max(max_tap, i);
    } else if (tag == "h2") {
      int i, j;
      double v;
      if (!(ls >> i >> j >> v)) throw std::runtime_error("kernel file: bad h2 line");
      k.h2[{i, j}] += v;
      k.order = std::max(k.order, 2);
      max_tap = std::max({max_tap, i, j});
    } else if (tag == "h3") {
      int i, j, l;
      double v;
      if (!(ls >> i >> j >> l >> v)) throw std::runtime_error("kernel file: bad h3 line");
      k.h3[{i, j, l}] += v;
      k.order = 3;
      max_tap = std::max({max_tap, i, j, l});
    } else {
      throw std::runtime_error("kernel file: unknown tag " + tag);
    }
  }
  k.memory = max_tap;
  k.validate();
  return k;
}

void write_volterra_kernel(std::ostream& out, const VolterraKernel& k) {
  if (k.h0 != 0.0) out << "h0 " << format_sig12(k.h0) << "\n";
  for (const auto& [i, v] : k.h1) out << "h1 " << i << " " << format_sig12(v) << "\n";
  for (const auto& [ij, v] : k.h2) {
    out << "h2 " << ij.first << " " << ij.second << " " << format_sig12(v) << "\n";
  }
  for (const auto& [ijk, v] : k.h3) {
    out << "h3 " << std::get<0>(ijk) << " " << std::get<1>(ijk) << " "
        << std::get<2>(ijk) << " " << format_sig12(v) << "\n";
  }
}

FiniteDistribution read_distribution_json(std::istream& in) {
  nlohmann::json j;
  in >> j;
  FiniteDistribution d;
  if (!j.contains("labels") || !j.contains("probs")) {
    throw std::runtime_error("distribution json: needs labels and probs");
  }
  for (const auto& l : j["labels"]) d.labels.push_back(l.get<std::string>());
  for (const auto& p : j["probs"]) d.probs.push_back(p.get<double>());
  d.validate(1e-9);
  return d;
}

std::string distribution_to_json(const FiniteDistribution& d) {
  nlohmann::json j;
  j["labels"] = d.labels;
  j["probs"] = d.probs;
  return j.dump();
}

ChannelMatrix read_channel_csv(std::istream& in) {
  ChannelMatrix m;
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("channel csv: empty");
  m.nx = rows.size();
  m.ny = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != m.ny) throw std::runtime_error("channel csv: ragged rows");
    m.t.insert(m.t.end(), r.begin(), r.end());
  }
  m.validate(1e-9);
  return m;
}

std::string format_sig12(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {}

namespace {
std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}
}  // namespace

void CsvWriter::header(const std::vector<std::string>& names) { text_row(names); }

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format_sig12(values[i]);
  }
  out_ << "\n";
}

void CsvWriter::text_row(const std::vector<std::string>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << quote_csv(values[i]);
  }
  out_ << "\n";
}

void write_coupling_csv(std::ostream& out, const Coupling& c,
                        const std::vector<std::string>& labels) {
  CsvWriter w(out);
  std::vector<std::string> head = {"row\\col"};
  head.insert(head.end(), labels.begin(), labels.end());
  w.header(head);
  for (size_t i = 0; i < c.k; ++i) {
    out << quote_csv(labels[i]);
    for (size_t j = 0; j < c.k; ++j) out << "," << format_sig12(c.at(i, j));
    out << "\n";
  }
}

}  // namespace comet
