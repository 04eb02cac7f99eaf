#include "arex/corpus.hpp"

#include <fstream>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "arex/errors.hpp"
#include "arex/strings.hpp"

namespace arex {

Query build_instance_query(const InstancePair& pair, int top_k) {
  if (trim(pair.e1).empty() || trim(pair.e2).empty()) {
    throw EmptyEntity("instance query needs two non-empty entities");
  }
  Query q;
  q.text = pair.e1 + " " + pair.e2;
  q.kind = QueryKind::kInstance;
  q.top_k = top_k;
  return q;
}

std::optional<Query> build_pattern_query(const Pattern& pattern, int top_k) {
  if (!pattern.queryable()) return std::nullopt;
  std::string text = "+";
  for (const std::string& w : *pattern.prefix) {
    text += w;
    text += "+";
  }
  text += "*+";
  for (const std::string& w : *pattern.middle) {
    text += w;
    text += "+";
  }
  text += "*+";
  return Query{std::move(text), QueryKind::kPattern, top_k};
}

SnapshotStore SnapshotStore::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ProviderUnavailable("snapshot file not found: " + file.string());
  }
  SnapshotStore store;
  // rank-keyed so interleaved lines still come out ordered
  std::map<std::string, std::map<int, std::string>> ranked;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": not a JSON object: " + e.what());
    }
    if (!doc.is_object()) {
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": not a JSON object");
    }
    if (!doc.contains("query")) {
      // Metadata header: provider name and capture date.
      if (line_no == 1 && (doc.contains("provider") || doc.contains("captured"))) {
        store.provider_name_ = doc.value("provider", store.provider_name_);
        store.capture_date_ = doc.value("captured", store.capture_date_);
        continue;
      }
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": missing \"query\" field");
    }
    if (!doc["query"].is_string() || !doc.contains("rank") ||
        !doc["rank"].is_number_integer() || !doc.contains("text") ||
        !doc["text"].is_string()) {
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": expected string query, integer rank, string text");
    }
    const std::string query = doc["query"].get<std::string>();
    const int rank = doc["rank"].get<int>();
    if (rank < 1) {
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": rank must be >= 1");
    }
    auto& by_rank = ranked[query];
    if (!by_rank.emplace(rank, doc["text"].get<std::string>()).second) {
      throw MalformedSnapshot(file.string() + ":" + std::to_string(line_no) +
                              ": duplicate rank " + std::to_string(rank) +
                              " for query \"" + query + "\"");
    }
  }
  for (auto& [query, by_rank] : ranked) {
    auto& list = store.entries_[query];
    list.reserve(by_rank.size());
    for (auto& [rank, text] : by_rank) list.push_back(std::move(text));
  }
  return store;
}

const std::vector<std::string>* SnapshotStore::find(
    const std::string& query_text) const {
  const auto it = entries_.find(query_text);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t SnapshotStore::entry_count() const {
  std::size_t n = 0;
  for (const auto& [query, list] : entries_) n += list.size();
  return n;
}

void SnapshotStore::add(const std::string& query_text,
                        const std::string& text) {
  entries_[query_text].push_back(text);
}

void SnapshotStore::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write snapshot: " + file.string());
  if (!capture_date_.empty() || provider_name_ != "snapshot") {
    nlohmann::json meta;
    meta["provider"] = provider_name_;
    if (!capture_date_.empty()) meta["captured"] = capture_date_;
    out << meta.dump() << "\n";
  }
  for (const auto& [query, list] : entries_) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      nlohmann::json row;
      row["query"] = query;
      row["rank"] = static_cast<int>(i + 1);
      row["text"] = list[i];
      out << row.dump() << "\n";
    }
  }
  if (!out) throw IoError("failed writing snapshot: " + file.string());
}

std::vector<Summary> SnapshotProvider::fetch(const Query& query) const {
  std::vector<Summary> out;
  const auto* list = store_.find(query.text);
  if (!list) return out;
  const std::size_t n =
      std::min<std::size_t>(list->size(), query.top_k < 0 ? 0 : query.top_k);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Summary{query.text, static_cast<int>(i + 1), (*list)[i]});
  }
  return out;
}

LiveProvider::LiveProvider(LiveConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) {
    throw ConfigError("live provider needs a base URL");
  }
}

std::vector<Summary> LiveProvider::fetch(const Query& query) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (config_.min_interval_ms > 0 &&
      last_request_.time_since_epoch().count() != 0) {
    const auto next =
        last_request_ + std::chrono::milliseconds(config_.min_interval_ms);
    std::this_thread::sleep_until(next);
  }
  last_request_ = std::chrono::steady_clock::now();

  // Split scheme://host[:port] from the path prefix.
  std::string base = config_.base_url;
  std::string path_prefix;
  const std::size_t scheme = base.find("://");
  const std::size_t slash =
      base.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    path_prefix = base.substr(slash);
    base = base.substr(0, slash);
  }
  if (path_prefix.empty() || path_prefix.back() != '/') path_prefix += "/";

  httplib::Client client(base);
  client.set_connection_timeout(0, config_.timeout_ms * 1000);
  client.set_read_timeout(0, config_.timeout_ms * 1000);
  if (!config_.proxy_host.empty()) {
    client.set_proxy(config_.proxy_host, config_.proxy_port);
  }
  httplib::Headers headers = {{"User-Agent", config_.user_agent}};

  httplib::Params params;
  params.emplace("q", query.text);
  params.emplace("n", std::to_string(query.top_k));
  auto res = client.Get(path_prefix, params, headers);
  if (!res) {
    throw ProviderUnavailable("live fetch failed: " +
                              httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderUnavailable("live fetch returned HTTP " +
                              std::to_string(res->status));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw ProviderUnavailable(std::string("live fetch returned invalid JSON: ") +
                              e.what());
  }
  if (!doc.is_array()) {
    throw ProviderUnavailable("live fetch expected a JSON array of snippets");
  }
  std::vector<Summary> out;
  for (const auto& item : doc) {
    if (static_cast<int>(out.size()) >= query.top_k) break;
    out.push_back(Summary{query.text, static_cast<int>(out.size() + 1),
                          item.get<std::string>()});
  }
  return out;
}

}  // namespace arex
