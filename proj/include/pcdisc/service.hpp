#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "pcdisc/matrix_io.hpp"
#include "pcdisc/report_json.hpp"
#include "pcdisc/revision.hpp"

namespace pcdisc {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// In-memory store of revision sessions behind the HTTP API.
///
/// Handlers take and return JSON so they can be exercised without a socket.
/// Mutations of one session are serialized by that session's lock; the
/// store lock is only held to look up or insert records. When a journal
/// path is given, every committed mutation is appended as one JSON line
/// and the file is replayed on construction.
class SessionService {
 public:
  explicit SessionService(AnalysisOptions opts = {}, std::optional<std::filesystem::path> journal = {})
      : opts_(opts) {
    if (journal) {
      replay(*journal);
      journal_.open(*journal, std::ios::app);
      if (!journal_) throw std::runtime_error("cannot open journal " + journal->string());
    }
  }

  ApiResponse create(std::string_view body) {
    return guarded([&]() -> ApiResponse {
      auto rec = std::make_shared<Record>(RevisionSession::open(parse_json_matrix(body), opts_));
      {
        std::unique_lock lock(store_mu_);
        do {
          rec->id = new_id();
        } while (sessions_.contains(rec->id));
        write_journal({{"op", "create"}, {"id", rec->id}, {"matrix", to_json(rec->session.matrix())}});
        sessions_.emplace(rec->id, rec);
      }
      std::shared_lock lock(rec->mu);
      return {201, view(*rec)};
    });
  }

  ApiResponse get(const std::string& id) const {
    auto rec = find(id);
    if (!rec) return not_found(id);
    std::shared_lock lock(rec->mu);
    return {200, view(*rec)};
  }

  /// Body {"i": .., "j": .., "value": ..}, 1-based coordinates.
  ApiResponse patch(const std::string& id, std::string_view body) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    return guarded([&]() -> ApiResponse {
      const auto [i, j, value] = parse_patch(body, rec->n);
      std::unique_lock lock(rec->mu);
      auto next = rec->session.apply(i - 1, j - 1, value);
      write_journal({{"op", "patch"}, {"id", id}, {"i", i}, {"j", j}, {"value", value}});
      commit(*rec, std::move(next));
      return {200, view(*rec)};
    });
  }

  ApiResponse undo(const std::string& id) {
    auto rec = find(id);
    if (!rec) return not_found(id);
    return guarded([&]() -> ApiResponse {
      std::unique_lock lock(rec->mu);
      if (rec->session.history().size() < 2) return error(409, "nothing to undo");
      auto next = rec->session.undo();
      write_journal({{"op", "undo"}, {"id", id}});
      commit(*rec, std::move(next));
      return {200, view(*rec)};
    });
  }

  ApiResponse health() const {
    std::shared_lock lock(store_mu_);
    return {200, {{"status", "ok"}, {"sessions", sessions_.size()}}};
  }

  std::size_t size() const {
    std::shared_lock lock(store_mu_);
    return sessions_.size();
  }

  static ApiResponse error(int status, const std::string& reason, std::size_t row = 0, std::size_t col = 0) {
    nlohmann::json e{{"reason", reason}};
    e["row"] = row ? nlohmann::json(row) : nlohmann::json(nullptr);
    e["col"] = col ? nlohmann::json(col) : nlohmann::json(nullptr);
    return {status, {{"error", std::move(e)}}};
  }

 private:
  using Clock = std::chrono::system_clock;

  struct Record {
    explicit Record(RevisionSession s)
        : n(s.matrix().size()), session(std::move(s)), created(Clock::now()), updated(created) {}
    mutable std::shared_mutex mu;
    const std::size_t n;
    std::string id;
    RevisionSession session;
    Clock::time_point created;
    Clock::time_point updated;
  };

  struct PatchRequest {
    std::size_t i;
    std::size_t j;
    double value;
  };

  static PatchRequest parse_patch(std::string_view body, std::size_t n) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("expected an object {\"i\", \"j\", \"value\"}");
    auto index = [&](const char* key) -> std::size_t {
      const auto it = doc.find(key);
      if (it == doc.end() || !it->is_number_integer()) {
        throw ValidationError(std::string("\"") + key + "\" must be an integer");
      }
      const auto v = it->get<long long>();
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw ValidationError(std::string("\"") + key + "\" out of range 1.." + std::to_string(n));
      }
      return static_cast<std::size_t>(v);
    };
    const std::size_t i = index("i");
    const std::size_t j = index("j");
    const auto vt = doc.find("value");
    if (vt == doc.end() || !vt->is_number()) throw ValidationError("\"value\" must be a number", i, j);
    const double value = vt->get<double>();
    if (i == j) throw ValidationError("diagonal entries are fixed at 1", i, j);
    if (!std::isfinite(value) || value <= 0.0) {
      throw ValidationError("entry must be a positive finite number", i, j);
    }
    return {i, j, value};
  }

  template <class F>
  static ApiResponse guarded(F&& f) {
    try {
      return f();
    } catch (const ValidationError& e) {
      return error(400, e.reason(), e.row(), e.col());
    } catch (const ConvergenceError& e) {
      return error(422, e.what());
    }
  }

  static ApiResponse not_found(const std::string& id) { return error(404, "unknown session " + id); }

  static nlohmann::json view(const Record& rec) {
    return {{"id", rec.id},
            {"created", interchange::iso8601(rec.created)},
            {"updated", interchange::iso8601(rec.updated)},
            {"history_length", rec.session.history().size()},
            {"bundle", interchange::bundle(rec.session.bundle())},
            {"step_log", interchange::step_log(rec.session)}};
  }

  static void commit(Record& rec, RevisionSession next) {
    rec.session = std::move(next);
    rec.updated = std::max(rec.created, Clock::now());
  }

  std::shared_ptr<Record> find(const std::string& id) const {
    std::shared_lock lock(store_mu_);
    const auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::string new_id() {
    std::uniform_int_distribution<unsigned> nibble(0, 15);
    std::string id(32, '0');
    for (char& ch : id) ch = "0123456789abcdef"[nibble(rng_)];
    return id;
  }

  void write_journal(const nlohmann::json& event) {
    if (!journal_.is_open()) return;
    std::lock_guard lock(journal_mu_);
    journal_ << event.dump() << '\n';
    journal_.flush();
  }

  void replay(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return;  // first run
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        const auto ev = nlohmann::json::parse(line);
        const auto op = ev.at("op").get<std::string>();
        const auto id = ev.at("id").get<std::string>();
        if (op == "create") {
          auto rec = std::make_shared<Record>(RevisionSession::open(matrix_from_json(ev.at("matrix")), opts_));
          rec->id = id;
          sessions_[id] = std::move(rec);
        } else if (op == "patch") {
          auto& rec = *sessions_.at(id);
          commit(rec, rec.session.apply(ev.at("i").get<std::size_t>() - 1, ev.at("j").get<std::size_t>() - 1,
                                        ev.at("value").get<double>()));
        } else if (op == "undo") {
          auto& rec = *sessions_.at(id);
          commit(rec, rec.session.undo());
        } else {
          throw std::runtime_error("unknown op " + op);
        }
      } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad journal entry: " + e.what());
      }
    }
  }

  AnalysisOptions opts_;
  mutable std::shared_mutex store_mu_;
  std::unordered_map<std::string, std::shared_ptr<Record>> sessions_;
  std::mt19937_64 rng_{std::random_device{}()};
  std::mutex journal_mu_;
  std::ofstream journal_;
};

}  // namespace pcdisc
