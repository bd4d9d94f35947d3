#include "service.hpp"

#include "hexmono/dendrite.hpp"
#include "hexmono/render.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/solver.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace hexmono::service {

using Json = nlohmann::ordered_json;

namespace {

Reply json_reply(int status, const Json& body)
{
    return {status, "application/json", body.dump()};
}

Reply error_reply(int status, const std::string& message)
{
    Json j = Json::object();
    j["error"] = message;
    return json_reply(status, j);
}

// 409 always names at least one clause
Reply conflict(const std::string& reason, const std::vector<Violation>& violations)
{
    Json j = Json::object();
    j["reason"] = reason;
    Json list = Json::array();
    for (const Violation& v : violations) {
        Json e = Json::object();
        e["clause"] = std::string(to_string(v.clause));
        Json cells = Json::array();
        for (const Cell& c : v.cells)
            cells.push_back(Json::array({c.q, c.r}));
        e["cells"] = std::move(cells);
        e["detail"] = v.detail;
        list.push_back(std::move(e));
    }
    j["violations"] = std::move(list);
    return json_reply(409, j);
}

Reply conflict(const std::string& reason, const std::string& clause, std::vector<Cell> cells)
{
    Json j = Json::object();
    j["reason"] = reason;
    Json e = Json::object();
    e["clause"] = clause;
    Json cl = Json::array();
    for (const Cell& c : cells)
        cl.push_back(Json::array({c.q, c.r}));
    e["cells"] = std::move(cl);
    e["detail"] = reason;
    j["violations"] = Json::array({e});
    return json_reply(409, j);
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json state_json(const RuleSet& rs, const TileState& s)
{
    Json j = Json::object();
    j["variant"] = rs.variants()[static_cast<std::size_t>(s.variant)];
    j["orientation"] = s.orientation;
    j["chirality"] = std::string(to_string(s.chirality));
    return j;
}

std::optional<int> parse_int(const std::string& s)
{
    std::size_t used = 0;
    try {
        const int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

} // namespace

Service::Service(ServiceOptions options) : options_(std::move(options))
{
    if (!options_.ruleset)
        throw std::invalid_argument("service needs a rule set");
    std::random_device rd;
    id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
                static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
    if (!options_.session_dir.empty()) {
        std::filesystem::create_directories(options_.session_dir);
        load_saved();
    }
}

Service::~Service() = default;

std::size_t Service::session_count() const
{
    std::shared_lock lock(map_mu_);
    return sessions_.size();
}

std::string Service::new_id()
{
    // splitmix64
    std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    std::ostringstream os;
    os << 's' << std::hex << std::setw(16) << std::setfill('0') << z;
    return os.str();
}

std::shared_ptr<Session> Service::find(const std::string& id) const
{
    std::shared_lock lock(map_mu_);
    const auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::string Service::session_body(Session& s) const
{
    Json j = Json::object();
    j["id"] = s.id;
    j["ruleset"] = s.patch.ruleset().name();
    j["patch"] = Json::parse(emit_patch(s.patch));
    return j.dump();
}

void Service::persist(Session& s) const
{
    if (options_.session_dir.empty())
        return;
    const auto path = options_.session_dir / (s.id + ".json");
    const auto tmp = options_.session_dir / (s.id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << emit_patch(s.patch);
    }
    std::filesystem::rename(tmp, path);
}

void Service::load_saved()
{
    for (const auto& entry : std::filesystem::directory_iterator(options_.session_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json")
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            auto s = std::make_shared<Session>();
            s->id = entry.path().stem().string();
            s->patch = parse_patch(ss.str(), options_.ruleset);
            if (!verify_patch(s->patch).empty()) {
                std::cerr << "skipping " << entry.path() << ": stored patch has violations\n";
                continue;
            }
            s->created = s->modified = utc_now();
            sessions_[s->id] = std::move(s);
        } catch (const std::exception& e) {
            std::cerr << "skipping " << entry.path() << ": " << e.what() << "\n";
        }
    }
}

Reply Service::create_session(const std::string& body)
{
    int radius = options_.default_radius;
    if (!body.empty()) {
        Json j;
        try {
            j = Json::parse(body);
        } catch (const std::exception& e) {
            return error_reply(400, std::string("malformed body: ") + e.what());
        }
        if (!j.is_object())
            return error_reply(400, "body must be an object");
        if (const auto it = j.find("radius"); it != j.end()) {
            if (!it->is_number_integer())
                return error_reply(400, "radius must be an integer");
            radius = it->get<int>();
        }
    }
    if (radius < 0 || radius > options_.max_radius)
        return error_reply(400, "radius must be in 0.." + std::to_string(options_.max_radius));

    auto s = std::make_shared<Session>();
    s->patch = Patch(Region::hex(radius), options_.ruleset);
    s->created = s->modified = utc_now();
    {
        std::unique_lock lock(map_mu_);
        do
            s->id = new_id();
        while (sessions_.contains(s->id));
        sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mu);
    persist(*s);
    Reply r{201, "application/json", session_body(*s)};
    return r;
}

Reply Service::get_session(const std::string& id)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);
    std::lock_guard lock(s->mu);
    return {200, "application/json", session_body(*s)};
}

Reply Service::legal(const std::string& id, const std::optional<std::string>& qs, const std::optional<std::string>& rs)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);
    if (!qs || !rs)
        return error_reply(400, "q and r are required");
    const auto q = parse_int(*qs);
    const auto r = parse_int(*rs);
    if (!q || !r)
        return error_reply(400, "q and r must be integers");

    Patch snapshot;
    {
        std::lock_guard lock(s->mu);
        snapshot = s->patch;
    }
    const Cell c{*q, *r};
    if (!snapshot.region().contains(c))
        return error_reply(400, "cell " + to_string(c) + " is outside the board");
    if (snapshot.assigned(c))
        return conflict("cell " + to_string(c) + " is occupied", "occupied", {c});

    Json j = Json::object();
    j["cell"] = Json::array({c.q, c.r});
    Json states = Json::array();
    for (const TileState& t : legal_states(snapshot, c))
        states.push_back(state_json(snapshot.ruleset(), t));
    j["states"] = std::move(states);
    return json_reply(200, j);
}

Reply Service::place(const std::string& id, const std::string& body)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);

    Json j;
    try {
        j = Json::parse(body);
    } catch (const std::exception& e) {
        return error_reply(400, std::string("malformed body: ") + e.what());
    }
    if (!j.is_object() || !j.contains("q") || !j.contains("r") || !j.contains("state") ||
        !j["q"].is_number_integer() || !j["r"].is_number_integer() || !j["state"].is_object())
        return error_reply(400, "expected {\"q\": int, \"r\": int, \"state\": {...}}");
    const Json& st = j["state"];
    if (!st.contains("variant") || !st["variant"].is_string() || !st.contains("orientation") ||
        !st["orientation"].is_number_integer())
        return error_reply(400, "state needs variant and orientation");

    const RuleSet& ruleset = *options_.ruleset;
    const auto variants = ruleset.variants();
    const auto vit = std::find(variants.begin(), variants.end(), st["variant"].get<std::string>());
    if (vit == variants.end())
        return error_reply(400, "unknown variant");
    Chirality chir = Chirality::R;
    if (st.contains("chirality")) {
        const auto parsed = st["chirality"].is_string() ? parse_chirality(st["chirality"].get<std::string>())
                                                         : std::nullopt;
        if (!parsed)
            return error_reply(400, "chirality must be \"R\" or \"F\"");
        chir = *parsed;
    }
    const int orientation = st["orientation"].get<int>();
    if (orientation < 0 || orientation > 5)
        return error_reply(400, "orientation must be in 0..5");
    const TileState state{static_cast<int>(vit - variants.begin()), orientation, chir};
    if (!is_valid_state(ruleset, state))
        return error_reply(400, "state is not declared by the rule set");
    const Cell c{j["q"].get<int>(), j["r"].get<int>()};

    std::lock_guard lock(s->mu);
    if (!s->patch.region().contains(c))
        return error_reply(400, "cell " + to_string(c) + " is outside the board");
    if (s->patch.assigned(c))
        return conflict("cell " + to_string(c) + " is occupied", "occupied", {c});

    Patch next = s->patch;
    next.assign(c, state);
    const auto violations = verify_patch(next);
    if (!violations.empty()) {
        const bool cycle = std::any_of(violations.begin(), violations.end(),
                                       [](const Violation& v) { return v.clause == Clause::Acyclicity; });
        return conflict(cycle ? "placement would close a male-joint cycle" : "placement violates a matching rule",
                        violations);
    }
    s->patch = std::move(next);
    s->undo.push_back(c);
    ++s->revision;
    s->modified = utc_now();
    persist(*s);
    return {200, "application/json", session_body(*s)};
}

Reply Service::undo(const std::string& id)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);
    std::lock_guard lock(s->mu);
    if (s->undo.empty())
        return conflict("nothing to undo", "undo", {});
    s->patch.unassign(s->undo.back());
    s->undo.pop_back();
    ++s->revision;
    s->modified = utc_now();
    persist(*s);
    return {200, "application/json", session_body(*s)};
}

Reply Service::hint(const std::string& id)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);
    Patch snapshot;
    {
        std::lock_guard lock(s->mu);
        snapshot = s->patch;
    }
    const MotifGraph g = motif_graph(snapshot);
    Json cells = Json::array();
    for (const Cell& c : g.nodes)
        if (g.in_degree(c) == 0)
            cells.push_back(Json::array({c.q, c.r}));
    Json j = Json::object();
    j["cells"] = std::move(cells);
    j["no_male_edges"] = g.no_male_edges;
    return json_reply(200, j);
}

Reply Service::render(const std::string& id, const std::string& style_name)
{
    auto s = find(id);
    if (!s)
        return error_reply(404, "unknown session " + id);
    RenderOptions opts;
    if (!style_name.empty()) {
        const auto style = parse_style(style_name);
        if (!style)
            return error_reply(400, "unknown style " + style_name);
        opts.style = *style;
    }
    Patch snapshot;
    {
        std::lock_guard lock(s->mu);
        snapshot = s->patch;
    }
    try {
        return {200, "image/svg+xml", render_svg(snapshot, opts)};
    } catch (const std::invalid_argument& e) {
        return error_reply(400, e.what());
    }
}

void Service::mount(httplib::Server& server)
{
    auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    auto with_revision = [this](httplib::Response& res, const std::string& id) {
        if (auto s = find(id)) {
            std::lock_guard lock(s->mu);
            res.set_header("X-Revision", std::to_string(s->revision));
            res.set_header("X-Created", s->created);
            res.set_header("X-Modified", s->modified);
        }
    };
    auto opt_param = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
        if (!req.has_param(key))
            return std::nullopt;
        return req.get_param_value(key);
    };

    server.Post("/sessions", [=, this](const httplib::Request& req, httplib::Response& res) {
        const Reply r = create_session(req.body);
        send(res, r);
        if (r.status == 201)
            with_revision(res, Json::parse(r.body)["id"].get<std::string>());
    });
    server.Get(R"(/sessions/([^/]+))", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, get_session(req.matches[1]));
        with_revision(res, req.matches[1]);
    });
    server.Get(R"(/sessions/([^/]+)/legal)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, legal(req.matches[1], opt_param(req, "q"), opt_param(req, "r")));
    });
    server.Post(R"(/sessions/([^/]+)/place)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, place(req.matches[1], req.body));
        with_revision(res, req.matches[1]);
    });
    server.Post(R"(/sessions/([^/]+)/undo)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, undo(req.matches[1]));
        with_revision(res, req.matches[1]);
    });
    server.Get(R"(/sessions/([^/]+)/hint)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, hint(req.matches[1]));
    });
    server.Get(R"(/sessions/([^/]+)/render\.svg)", [=, this](const httplib::Request& req, httplib::Response& res) {
        send(res, render(req.matches[1], opt_param(req, "style").value_or("")));
    });
}

bool run_server(Service& service, const std::string& host, int port)
{
    httplib::Server server;
    service.mount(server);
    return server.listen(host, port);
}

} // namespace hexmono::service
