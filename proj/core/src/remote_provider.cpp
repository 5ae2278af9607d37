#include <httplib.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <json.hpp>
#include <thread>

#include "odpx/embedding.hpp"

namespace odpx {

namespace {

using nlohmann::json;

/// Splits "https://host:8080/v1/embeddings" into ("https://host:8080", "/v1/embeddings").
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

RemoteHttpProvider::RemoteHttpProvider(ProviderConfig config) : config_(std::move(config)) {
  config_.kind = ProviderKind::remote_http;
  config_.validate();
  std::tie(scheme_host_port_, path_) = split_endpoint(config_.endpoint);
  if (!config_.auth_token_env.empty()) {
    if (const char* token = std::getenv(config_.auth_token_env.c_str()); token && *token) {
      token_ = token;
    }
  }
}

std::string RemoteHttpProvider::identity() const {
  return "remote-http/" + config_.model;
}

std::vector<EmbeddingVector> RemoteHttpProvider::post_chunk(std::span<const std::string> texts) const {
  httplib::Client client(scheme_host_port_);
  const auto ms = config_.timeout.count();
  client.set_connection_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_read_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_write_timeout(ms / 1000, (ms % 1000) * 1000);

  httplib::Headers headers;
  if (token_) headers.emplace("Authorization", "Bearer " + *token_);

  const json body = {{"input", std::vector<std::string>(texts.begin(), texts.end())},
                     {"model", config_.model}};
  const auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("embedding request to " + config_.endpoint + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw HttpStatusError(res->status, "embedding service returned HTTP " + std::to_string(res->status));
  }

  json doc;
  try {
    doc = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ResponseShapeError(std::string("embedding response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("data") || !doc["data"].is_array()) {
    throw ResponseShapeError("embedding response lacks a 'data' array");
  }
  const json& data = doc["data"];
  if (data.size() != texts.size()) {
    throw ResponseShapeError("embedding response has " + std::to_string(data.size()) +
                             " items for " + std::to_string(texts.size()) + " inputs");
  }

  std::vector<std::optional<EmbeddingVector>> slots(texts.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const json& item = data[i];
    if (!item.is_object() || !item.contains("embedding") || !item["embedding"].is_array()) {
      throw ResponseShapeError("item " + std::to_string(i) + " lacks an 'embedding' array");
    }
    std::size_t slot = i;
    if (item.contains("index")) {
      if (!item["index"].is_number_unsigned() || item["index"].get<std::size_t>() >= texts.size()) {
        throw ResponseShapeError("item " + std::to_string(i) + " has a bad 'index'");
      }
      slot = item["index"].get<std::size_t>();
    }
    if (slots[slot]) throw ResponseShapeError("duplicate index " + std::to_string(slot));
    std::vector<float> values;
    values.reserve(item["embedding"].size());
    for (const json& x : item["embedding"]) {
      if (!x.is_number()) throw ResponseShapeError("non-numeric embedding value");
      const double v = x.get<double>();
      if (!std::isfinite(v)) throw ResponseShapeError("non-finite embedding value");
      values.push_back(static_cast<float>(v));
    }
    if (values.empty()) throw ResponseShapeError("empty embedding");
    slots[slot] = EmbeddingVector(std::move(values)).normalized();
  }

  std::vector<EmbeddingVector> out;
  out.reserve(slots.size());
  for (auto& s : slots) {
    if (!out.empty() && out.front().dimension() != s->dimension()) {
      throw DimensionMismatchError("embedding dimensions differ within one response");
    }
    out.push_back(std::move(*s));
  }
  return out;
}

std::vector<EmbeddingVector> RemoteHttpProvider::embed(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const std::size_t chunk = config_.max_batch_size;
  const std::size_t chunks = (texts.size() + chunk - 1) / chunk;
  std::vector<std::vector<EmbeddingVector>> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        const std::size_t begin = c * chunk;
        results[c] = post_chunk(texts.subspan(begin, std::min(chunk, texts.size() - begin)));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(config_.max_in_flight, chunks);
    for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (auto& r : results) {
    for (auto& v : r) {
      if (!out.empty() && out.front().dimension() != v.dimension()) {
        throw DimensionMismatchError("embedding dimensions differ across batches");
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace odpx
