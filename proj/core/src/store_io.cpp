#include <boost/crc.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "greenseq/explorer.hpp"
#include "greenseq/json_io.hpp"

namespace greenseq {

namespace {

using Json = nlohmann::json;

constexpr const char* kFormat = "greenseq-store";
constexpr int kVersion = 1;

std::uint32_t crc32(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* color_name(EdgeColor c) { return c == EdgeColor::green ? "green" : "red"; }

EdgeColor color_from(const std::string& s) {
  if (s == "green") return EdgeColor::green;
  if (s == "red") return EdgeColor::red;
  throw std::runtime_error("store: unknown edge color \"" + s + "\"");
}

}  // namespace

std::string serialize_store(const ExchangeGraphStore& store) {
  std::string out;
  auto line = [&out](const Json& j) {
    out += j.dump();
    out += '\n';
  };
  line(Json{{"type", "header"},
            {"format", kFormat},
            {"version", kVersion},
            {"B0", json::matrix_to_json(store.b0())},
            {"budget",
             {{"max_depth", store.budget().max_depth},
              {"max_nodes", store.budget().max_nodes},
              {"mode", to_string(store.budget().mode)}}},
            {"truncated", store.truncated()},
            {"guard_hits", store.guard_hits()}});
  for (const StoreNode& n : store.nodes()) {
    line(Json{{"type", "node"},
              {"id", n.id},
              {"depth", n.depth},
              {"path", n.path.dirs},
              {"key", hex64(n.key.digest)},
              {"seed", json::seed_pair_to_json(n.seed)}});
  }
  for (const StoreEdge& e : store.edges())
    line(Json{{"type", "edge"}, {"from", e.from}, {"dir", e.direction}, {"to", e.to}, {"color", color_name(e.color)}});
  line(Json{{"type", "frontier"}, {"ids", std::vector<std::size_t>(store.frontier().begin(), store.frontier().end())}});
  line(Json{{"type", "checksum"}, {"crc32", crc32(out)}});
  return out;
}

ExchangeGraphStore parse_store(const std::string& text) {
  const auto tail_start = text.rfind('\n', text.size() >= 2 ? text.size() - 2 : 0);
  if (text.empty() || tail_start == std::string::npos) throw std::runtime_error("store: truncated file");
  const std::string body = text.substr(0, tail_start + 1);
  Json tail;
  try {
    tail = Json::parse(text.substr(tail_start + 1));
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("store: bad checksum line: ") + e.what());
  }
  if (tail.value("type", "") != "checksum") throw std::runtime_error("store: missing checksum line");
  if (tail.at("crc32").get<std::uint32_t>() != crc32(body)) throw std::runtime_error("store: checksum mismatch");

  ExchangeGraphStore store;
  std::istringstream in(body);
  std::string raw;
  bool have_header = false;
  bool have_frontier = false;
  try {
    while (std::getline(in, raw)) {
      const Json j = Json::parse(raw);
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw std::runtime_error("store: first record must be the header");
        if (j.at("format").get<std::string>() != kFormat) throw std::runtime_error("store: unknown format");
        const int version = j.at("version").get<int>();
        if (version != kVersion)
          throw std::runtime_error("store: unsupported version " + std::to_string(version) + " (expected " +
                                   std::to_string(kVersion) + ")");
        store.b0_ = json::matrix_from_json(j.at("B0"));
        const Json& b = j.at("budget");
        store.budget_ = SearchBudget{b.at("max_depth").get<std::size_t>(), b.at("max_nodes").get<std::size_t>(),
                                     search_mode_from_string(b.at("mode").get<std::string>())};
        store.truncated_ = j.at("truncated").get<bool>();
        store.guard_hits_ = j.at("guard_hits").get<std::size_t>();
        have_header = true;
      } else if (type == "node") {
        StoreNode n;
        n.depth = j.at("depth").get<std::size_t>();
        n.path.dirs = j.at("path").get<std::vector<int>>();
        n.seed = json::seed_pair_from_json(j.at("seed"));
        n.key = canonical_key(n.seed);
        if (hex64(n.key.digest) != j.at("key").get<std::string>())
          throw std::runtime_error("store: node key does not match its seed");
        if (j.at("id").get<std::size_t>() != store.nodes_.size())
          throw std::runtime_error("store: node ids out of order");
        store.add_node(std::move(n));
      } else if (type == "edge") {
        StoreEdge e{j.at("from").get<std::size_t>(), j.at("dir").get<int>(), j.at("to").get<std::size_t>(),
                    color_from(j.at("color").get<std::string>())};
        if (e.from >= store.nodes_.size() || e.to >= store.nodes_.size())
          throw std::runtime_error("store: edge refers to an unknown node");
        store.edges_.push_back(e);
      } else if (type == "frontier") {
        for (std::size_t id : j.at("ids").get<std::vector<std::size_t>>()) {
          if (id >= store.nodes_.size()) throw std::runtime_error("store: frontier refers to an unknown node");
          store.frontier_.push_back(id);
        }
        have_frontier = true;
      } else {
        throw std::runtime_error("store: unknown record type \"" + type + "\"");
      }
    }
  } catch (const Json::exception& e) {
    throw std::runtime_error(std::string("store: malformed record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("store: ") + e.what());
  }
  if (!have_header || !have_frontier) throw std::runtime_error("store: incomplete file");
  return store;
}

void save_store(const ExchangeGraphStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_store(store);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ExchangeGraphStore load_store(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_store(ss.str());
}

}  // namespace greenseq
