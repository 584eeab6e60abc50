#include "sbmr/partition.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sbmr/errors.hpp"

namespace sbmr {

Partition::Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k <= 0) throw std::invalid_argument("Partition: k must be positive");
  for (int l : labels_)
    if (l < 0 || l >= k) throw std::invalid_argument("Partition: label out of range");
}

Partition Partition::contiguous(int n, int k) {
  std::vector<int> labels(static_cast<std::size_t>(n) * k);
  for (int v = 0; v < n * k; ++v) labels[v] = v / n;
  return Partition(std::move(labels), k);
}

std::vector<int> Partition::cluster_sizes() const {
  std::vector<int> sizes(k_, 0);
  for (int l : labels_) ++sizes[l];
  return sizes;
}

std::vector<std::vector<int>> Partition::clusters() const {
  std::vector<std::vector<int>> out(k_);
  for (int v = 0; v < vertex_count(); ++v) out[labels_[v]].push_back(v);
  return out;
}

bool Partition::balanced(int n) const {
  auto sizes = cluster_sizes();
  return std::all_of(sizes.begin(), sizes.end(), [n](int s) { return s == n; });
}

Partition Partition::relabeled(const std::vector<int>& pi) const {
  if (static_cast<int>(pi.size()) != k_)
    throw std::invalid_argument("relabeled: permutation size mismatch");
  std::vector<int> labels(labels_.size());
  for (std::size_t v = 0; v < labels_.size(); ++v) labels[v] = pi[labels_[v]];
  return Partition(std::move(labels), k_);
}

int WeakPartition::vertex_count() const {
  return std::accumulate(clusters.begin(), clusters.end(), 0,
                         [](int acc, const auto& c) { return acc + static_cast<int>(c.size()); });
}

void write_partition(std::ostream& out, const Partition& p) {
  for (int l : p.labels()) out << l << '\n';
}

Partition read_partition(std::istream& in, int k_hint) {
  std::vector<int> labels;
  std::string line;
  std::int64_t lineno = 0;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    int l = 0;
    if (!(row >> l) || l < 0) throw ParseError("bad partition label", lineno);
    labels.push_back(l);
    max_label = std::max(max_label, l);
  }
  if (labels.empty()) throw ParseError("empty partition file", 1);
  return Partition(std::move(labels), std::max(k_hint, max_label + 1));
}

void write_partition_file(const std::string& path, const Partition& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_partition(out, p);
}

Partition read_partition_file(const std::string& path, int k_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_partition(in, k_hint);
}

}  // namespace sbmr
