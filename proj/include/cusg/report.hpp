#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"

namespace cusg {

  using Json = nlohmann::json;  // std::map objects: keys come out sorted

  // 64-bit FNV-1a, printed as 16 hex digits.
  inline std::string fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  struct RunReport {
    std::string command;
    std::string input_digest;
    Json        bounds   = Json::object();
    Json        verdicts = Json::object();
    Json        witnesses = Json::object();
    std::optional<double> timing_ms;  // left out of the JSON unless set
    int         exit_code = 0;

    Json to_json() const {
      Json j;
      j["command"]      = command;
      j["input_digest"] = input_digest;
      j["bounds"]       = bounds;
      j["verdicts"]     = verdicts;
      j["witnesses"]    = witnesses;
      j["exit_code"]    = exit_code;
      if (timing_ms) {
        j["timing_ms"] = *timing_ms;
      }
      return j;
    }

    static RunReport from_json(Json const& j) {
      RunReport r;
      r.command      = j.at("command").get<std::string>();
      r.input_digest = j.at("input_digest").get<std::string>();
      r.bounds       = j.at("bounds");
      r.verdicts     = j.at("verdicts");
      r.witnesses    = j.at("witnesses");
      r.exit_code    = j.at("exit_code").get<int>();
      return r;
    }

    std::string dump() const {
      return to_json().dump(2) + "\n";
    }
  };

  // Agreement on everything but timing.
  inline bool same_result(RunReport const& a, RunReport const& b) {
    return a.command == b.command && a.input_digest == b.input_digest && a.bounds == b.bounds
           && a.verdicts == b.verdicts && a.witnesses == b.witnesses
           && a.exit_code == b.exit_code;
  }

  // A directory of reports keyed by digest of (input digest, command, bounds).
  class ResultCache {
   public:
    explicit ResultCache(std::filesystem::path dir) : _dir(std::move(dir)) {}

    static std::string key(std::string const& input_digest,
                           std::string const& command,
                           Json const&        bounds) {
      return fnv1a(input_digest + "\n" + command + "\n" + bounds.dump());
    }

    std::filesystem::path path(std::string const& key) const {
      return _dir / (key + ".json");
    }

    std::optional<RunReport> load(std::string const& key) const {
      std::ifstream in(path(key));
      if (!in) {
        return std::nullopt;
      }
      try {
        return RunReport::from_json(Json::parse(in));
      } catch (Json::exception const&) {
        return std::nullopt;  // a damaged entry is a miss
      }
    }

    // Written to a temporary file and renamed, so readers never see a
    // partial entry.
    void store(std::string const& key, RunReport const& r) const {
      std::filesystem::create_directories(_dir);
      auto tmp = _dir / (key + ".json.tmp");
      {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
          throw Error("cannot write cache entry " + tmp.string());
        }
        RunReport copy = r;
        copy.timing_ms.reset();
        out << copy.dump();
      }
      std::filesystem::rename(tmp, path(key));
    }

   private:
    std::filesystem::path _dir;
  };

}  // namespace cusg
