#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbmr {

/// Labeling of vertices into clusters 0..k-1.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> labels, int k);

  /// Contiguous equipartition: vertices 0..n-1 in cluster 0, and so on.
  static Partition contiguous(int n, int k);

  int k() const { return k_; }
  int vertex_count() const { return static_cast<int>(labels_.size()); }
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  std::vector<int> cluster_sizes() const;
  /// Members of each cluster in ascending vertex order.
  std::vector<std::vector<int>> clusters() const;

  /// True iff every cluster has exactly n vertices.
  bool balanced(int n) const;

  /// Applies pi to cluster indices: new label of v is pi[label(v)].
  Partition relabeled(const std::vector<int>& pi) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Unbalanced intermediate output of the recovery algorithm: disjoint
/// clusters in creation order, sizes capped at n, union = V.
struct WeakPartition {
  std::vector<std::vector<int>> clusters;

  int cluster_count() const { return static_cast<int>(clusters.size()); }
  int vertex_count() const;
};

/// One label per line.
void write_partition(std::ostream& out, const Partition& p);
Partition read_partition(std::istream& in, int k_hint = 0);
void write_partition_file(const std::string& path, const Partition& p);
Partition read_partition_file(const std::string& path, int k_hint = 0);

}  // namespace sbmr
