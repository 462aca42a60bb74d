// File formats: degree-distribution text files ("v i value" / "c i value"),
// Volterra kernel files ("h0 v", "h1 i v", "h2 i j v", "h3 i j k v"),
// distribution JSON ({"labels": [...], "probs": [...]}), channel CSV, and a
// 12-significant-digit CSV writer.
#ifndef COMET_IO_HPP
#define COMET_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "comet/channel.hpp"
#include "comet/info_measures.hpp"
#include "comet/ldpc.hpp"

namespace comet {

DegreeDistribution read_degree_distribution(std::istream& in);
void write_degree_distribution(std::ostream& out, const DegreeDistribution& dd);
/// Accepts either "dv,dc" for regular ensembles or a file path.
DegreeDistribution parse_degree_spec(const std::string& spec);

VolterraKernel read_volterra_kernel(std::istream& in);
void write_volterra_kernel(std::ostream& out, const VolterraKernel& k);

FiniteDistribution read_distribution_json(std::istream& in);
std::string distribution_to_json(const FiniteDistribution& d);

/// Row-stochastic matrix as CSV rows of transition probabilities.
ChannelMatrix read_channel_csv(std::istream& in);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  /// RFC-style quoting for text cells.
  void text_row(const std::vector<std::string>& values);

 private:
  std::ostream& out_;
};

std::string format_sig12(double v);

void write_coupling_csv(std::ostream& out, const Coupling& c,
                        const std::vector<std::string>& labels);

}  // namespace comet

#endif
