#ifndef AREX_CORPUS_HPP
#define AREX_CORPUS_HPP

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "arex/types.hpp"

namespace arex {

enum class QueryKind { kInstance, kPattern };

struct Query {
  std::string text;
  QueryKind kind = QueryKind::kInstance;
  int top_k = 20;
};

// One search-result snippet. raw_text is kept byte-exact as fetched or
// stored; normalization happens downstream.
struct Summary {
  std::string query_text;
  int rank = 1;
  std::string raw_text;
};

// Instance query: both entities joined by a single space, no operators.
// Throws EmptyEntity when either entity is empty.
Query build_instance_query(const InstancePair& pair, int top_k);

// Pattern query of the form +prefix words+*+middle words+*+ where * is
// the entity placeholder. Patterns lacking either search part yield no
// query (absence is a valid outcome, not an error).
std::optional<Query> build_pattern_query(const Pattern& pattern, int top_k);

class SearchProvider {
 public:
  virtual ~SearchProvider() = default;

  // Returns at most query.top_k summaries ranked 1..n in provider
  // order; an empty list when the provider has no results. Safe to call
  // concurrently.
  virtual std::vector<Summary> fetch(const Query& query) const = 0;
};

// Deterministic file-backed corpus: UTF-8 JSON lines, one object
// {"query": ..., "rank": ..., "text": ...} per line. An optional first
// line {"provider": ..., "captured": ...} carries metadata. Lookup is
// immutable after load, so the same query always returns byte-identical
// results.
class SnapshotStore {
 public:
  static SnapshotStore load(const std::filesystem::path& file);

  const std::vector<std::string>* find(const std::string& query_text) const;

  std::size_t query_count() const { return entries_.size(); }
  std::size_t entry_count() const;
  const std::string& provider_name() const { return provider_name_; }
  const std::string& capture_date() const { return capture_date_; }

  // Appends one entry; used by the snapshot-building command. Ranks are
  // assigned in insertion order per query.
  void add(const std::string& query_text, const std::string& text);
  void save(const std::filesystem::path& file) const;

  SnapshotStore() = default;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::string provider_name_ = "snapshot";
  std::string capture_date_;
};

class SnapshotProvider : public SearchProvider {
 public:
  explicit SnapshotProvider(SnapshotStore store) : store_(std::move(store)) {}

  std::vector<Summary> fetch(const Query& query) const override;

  const SnapshotStore& store() const { return store_; }

 private:
  SnapshotStore store_;
};

// Configuration for the optional live HTTP backend. The endpoint is any
// service answering GET {base_url}?q=<query>&n=<top_k> with a JSON array
// of snippet strings in rank order.
struct LiveConfig {
  std::string base_url;
  std::string user_agent = "arex/1.0";
  int timeout_ms = 5000;
  std::string proxy_host;
  int proxy_port = 0;
  int min_interval_ms = 0;
};

class LiveProvider : public SearchProvider {
 public:
  explicit LiveProvider(LiveConfig config);

  // Serializes outbound requests: at most one in flight per provider
  // instance, with min_interval_ms between request starts.
  std::vector<Summary> fetch(const Query& query) const override;

 private:
  LiveConfig config_;
  mutable std::mutex mutex_;
  mutable std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace arex

#endif  // AREX_CORPUS_HPP
