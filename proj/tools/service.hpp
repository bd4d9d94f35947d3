#pragma once

// HTTP session service for the interactive tiler. Every session owns one
// patch; mutations go through verify-before-commit so a stored patch is
// always violation-free.

#include "hexmono/patch.hpp"
#include "hexmono/tilemodel.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace hexmono::service {

struct Session {
    std::string id;
    Patch patch;
    std::vector<Cell> undo;
    std::uint64_t revision = 0;
    std::string created;
    std::string modified;
    std::mutex mu;
};

struct ServiceOptions {
    RuleSetPtr ruleset;
    int default_radius = 6;
    int max_radius = 12;
    /// Empty: sessions live in memory only.
    std::filesystem::path session_dir;
};

/// Response of one request, independent of the transport.
struct Reply {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

class Service {
public:
    explicit Service(ServiceOptions options);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    Reply create_session(const std::string& body);
    Reply get_session(const std::string& id);
    Reply legal(const std::string& id, const std::optional<std::string>& q, const std::optional<std::string>& r);
    Reply place(const std::string& id, const std::string& body);
    Reply undo(const std::string& id);
    Reply hint(const std::string& id);
    Reply render(const std::string& id, const std::string& style);

    /// Routes every endpoint on `server`.
    void mount(httplib::Server& server);

    std::size_t session_count() const;

private:
    std::shared_ptr<Session> find(const std::string& id) const;
    std::string session_body(Session& s) const;
    void persist(Session& s) const;
    void load_saved();
    std::string new_id();

    ServiceOptions options_;
    mutable std::shared_mutex map_mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t id_state_;
};

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool run_server(Service& service, const std::string& host, int port);

} // namespace hexmono::service
