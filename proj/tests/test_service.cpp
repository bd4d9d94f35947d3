#include "service.hpp"

#include "hexmono/render.hpp"
#include "hexmono/ruleset_io.hpp"
#include "hexmono/solver.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

using namespace hexmono;
using Json = nlohmann::json;

namespace {

// Service mounted on an ephemeral loopback port for the lifetime of the object.
class Harness {
public:
    explicit Harness(service::ServiceOptions opts) : svc_(std::move(opts))
    {
        svc_.mount(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }
    ~Harness()
    {
        server_.stop();
        thread_.join();
    }

    httplib::Client& http() { return *client_; }
    service::Service& svc() { return svc_; }

    std::string create(int radius)
    {
        auto r = client_->Post("/sessions", Json{{"radius", radius}}.dump(), "application/json");
        EXPECT_TRUE(r);
        EXPECT_EQ(r->status, 201);
        return Json::parse(r->body)["id"];
    }

    httplib::Result place(const std::string& id, int q, int r, int o, const char* chir = "R")
    {
        return place_with(*client_, id, q, r, o, chir);
    }

    static httplib::Result place_with(httplib::Client& c, const std::string& id, int q, int r, int o, const char* chir)
    {
        const Json body{{"q", q}, {"r", r}, {"state", {{"variant", "T"}, {"orientation", o}, {"chirality", chir}}}};
        return c.Post("/sessions/" + id + "/place", body.dump(), "application/json");
    }

    int port() const { return port_; }

private:
    service::Service svc_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::unique_ptr<httplib::Client> client_;
};

service::ServiceOptions opts(RuleSetPtr rs, std::filesystem::path dir = {})
{
    service::ServiceOptions o;
    o.ruleset = std::move(rs);
    o.session_dir = std::move(dir);
    return o;
}

bool names_clause(const Json& body, const std::string& clause)
{
    for (const auto& v : body["violations"])
        if (v["clause"] == clause)
            return true;
    return false;
}

std::filesystem::path temp_dir(const std::string& tag)
{
    auto d = std::filesystem::temp_directory_path() / ("hexmono_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    return d;
}

} // namespace

TEST(Service, CreateAndRead)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    const std::string id = h.create(3);
    auto r = h.http().Get("/sessions/" + id);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->get_header_value("X-Revision"), "0");
    const Json j = Json::parse(r->body);
    EXPECT_EQ(j["id"], id);
    EXPECT_EQ(j["ruleset"], "hextoo6");
    EXPECT_EQ(j["patch"]["region"]["radius"], 3);
    EXPECT_TRUE(j["patch"]["assignment"].empty());
    // the embedded patch is a regular patch document
    EXPECT_NO_THROW(parse_patch(j["patch"].dump()));
}

TEST(Service, DefaultAndRejectedRadius)
{
    Harness h(opts(shipped_ruleset("unmarked")));
    auto r = h.http().Post("/sessions", "", "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 201);
    EXPECT_EQ(Json::parse(r->body)["patch"]["region"]["radius"], 6);
    EXPECT_EQ(h.http().Post("/sessions", R"({"radius": 13})", "application/json")->status, 400);
    EXPECT_EQ(h.http().Post("/sessions", R"({"radius": "x"})", "application/json")->status, 400);
    EXPECT_EQ(h.http().Post("/sessions", "{", "application/json")->status, 400);
}

TEST(Service, LegalMatchesSolver)
{
    Harness h(opts(shipped_ruleset("st12")));
    const std::string id = h.create(2);
    auto r = h.http().Get("/sessions/" + id + "/legal?q=0&r=0");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(Json::parse(r->body)["states"].size(), 12u);

    ASSERT_EQ(h.place(id, 0, 0, 2, "F")->status, 200);
    r = h.http().Get("/sessions/" + id + "/legal?q=1&r=0");
    const Json j = Json::parse(r->body);
    Patch p(region_cells(2), shipped_ruleset("st12"));
    p.assign({0, 0}, {0, 2, Chirality::F});
    const auto expect = legal_states(p, {1, 0});
    ASSERT_EQ(j["states"].size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        EXPECT_EQ(j["states"][i]["orientation"], expect[i].orientation);
        EXPECT_EQ(j["states"][i]["chirality"], std::string(to_string(expect[i].chirality)));
    }
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/legal?q=0&r=0")->status, 409);
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/legal?q=9&r=0")->status, 400);
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/legal?q=0")->status, 400);
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/legal?q=a&r=0")->status, 400);
}

TEST(Service, PlaceShowsTileAndUndoRestoresBytes)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    const std::string id = h.create(2);
    const std::string before = h.http().Get("/sessions/" + id)->body;

    auto r = h.place(id, 0, 0, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->get_header_value("X-Revision"), "1");
    EXPECT_EQ(Json::parse(r->body)["patch"]["assignment"].size(), 1u);
    EXPECT_EQ(Json::parse(h.http().Get("/sessions/" + id)->body)["patch"]["assignment"].size(), 1u);

    r = h.http().Post("/sessions/" + id + "/undo", "", "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->body, before);
    EXPECT_EQ(h.http().Get("/sessions/" + id)->body, before);
    EXPECT_EQ(r->get_header_value("X-Revision"), "2");

    r = h.http().Post("/sessions/" + id + "/undo", "", "application/json");
    EXPECT_EQ(r->status, 409);
    EXPECT_TRUE(names_clause(Json::parse(r->body), "undo"));
}

TEST(Service, CycleClosingPlacementRejected)
{
    Harness h(opts(fixtures::free_male()));
    const std::string id = h.create(2);
    ASSERT_EQ(h.place(id, 0, 0, 0)->status, 200); // -> (1,0)
    const std::string before = h.http().Get("/sessions/" + id)->body;
    auto r = h.place(id, 1, 0, 3); // -> (0,0)
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 409);
    const Json j = Json::parse(r->body);
    ASSERT_TRUE(names_clause(j, "acyclicity"));
    for (const auto& v : j["violations"])
        if (v["clause"] == "acyclicity") {
            EXPECT_EQ(v["cells"], Json::parse("[[0,0],[1,0]]"));
        }
    EXPECT_FALSE(j["reason"].get<std::string>().empty());
    EXPECT_EQ(h.http().Get("/sessions/" + id)->body, before);
}

TEST(Service, MatchingViolationNamesClause)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    const std::string id = h.create(2);
    ASSERT_EQ(h.place(id, 0, 0, 0)->status, 200);
    auto r = h.place(id, 1, 0, 3);
    EXPECT_EQ(r->status, 409);
    EXPECT_TRUE(names_clause(Json::parse(r->body), "K1"));
    r = h.place(id, 0, 0, 1);
    EXPECT_EQ(r->status, 409);
    EXPECT_TRUE(names_clause(Json::parse(r->body), "occupied"));
}

TEST(Service, UnknownSession)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    EXPECT_EQ(h.http().Get("/sessions/nope")->status, 404);
    EXPECT_EQ(h.http().Get("/sessions/nope/legal?q=0&r=0")->status, 404);
    EXPECT_EQ(h.place("nope", 0, 0, 0)->status, 404);
    EXPECT_EQ(h.http().Post("/sessions/nope/undo", "", "application/json")->status, 404);
    EXPECT_EQ(h.http().Get("/sessions/nope/hint")->status, 404);
    EXPECT_EQ(h.http().Get("/sessions/nope/render.svg")->status, 404);
}

TEST(Service, MalformedPlacement)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    const std::string id = h.create(2);
    auto post = [&](const std::string& body) {
        return h.http().Post("/sessions/" + id + "/place", body, "application/json")->status;
    };
    EXPECT_EQ(post("not json"), 400);
    EXPECT_EQ(post("[]"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0})"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0, "state": {"variant": "T"}})"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0, "state": {"variant": "X", "orientation": 0}})"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0, "state": {"variant": "T", "orientation": 6}})"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0, "state": {"variant": "T", "orientation": 0, "chirality": "F"}})"), 400);
    EXPECT_EQ(post(R"({"q": 0, "r": 0, "state": {"variant": "T", "orientation": 0, "chirality": "Q"}})"), 400);
    EXPECT_EQ(post(R"({"q": 7, "r": 0, "state": {"variant": "T", "orientation": 0}})"), 400);
    EXPECT_EQ(Json::parse(h.http().Get("/sessions/" + id)->body)["patch"]["assignment"].size(), 0u);
}

TEST(Service, Hint)
{
    Harness h(opts(fixtures::free_male()));
    const std::string id = h.create(3);
    auto hint = [&] { return Json::parse(h.http().Get("/sessions/" + id + "/hint")->body); };
    EXPECT_TRUE(hint()["cells"].empty());
    EXPECT_FALSE(hint()["no_male_edges"].get<bool>());
    ASSERT_EQ(h.place(id, 0, 0, 0)->status, 200);
    EXPECT_EQ(hint()["cells"], Json::parse("[[0,0]]"));
    ASSERT_EQ(h.place(id, 1, 0, 0)->status, 200); // (0,0) -> (1,0)
    EXPECT_EQ(hint()["cells"], Json::parse("[[0,0]]"));

    Harness plain(opts(shipped_ruleset("st12")));
    const std::string pid = plain.create(1);
    EXPECT_TRUE(Json::parse(plain.http().Get("/sessions/" + pid + "/hint")->body)["no_male_edges"].get<bool>());
}

TEST(Service, Render)
{
    Harness h(opts(shipped_ruleset("hextoo6")));
    const std::string id = h.create(2);
    ASSERT_EQ(h.place(id, 0, 0, 0)->status, 200);
    auto r = h.http().Get("/sessions/" + id + "/render.svg?style=joints");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->get_header_value("Content-Type"), "image/svg+xml");
    EXPECT_NE(r->body.find("class=\"male\""), std::string::npos);
    Patch p(region_cells(2), shipped_ruleset("hextoo6"));
    p.assign({0, 0}, fixtures::st(0));
    RenderOptions o;
    o.style = Style::Joints;
    EXPECT_EQ(r->body, render_svg(p, o));
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/render.svg")->status, 200);
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/render.svg?style=sepia")->status, 400);
    EXPECT_EQ(h.http().Get("/sessions/" + id + "/render.svg?style=stripes")->status, 400);
}

TEST(Service, PersistsAcrossRestart)
{
    const auto dir = temp_dir("persist");
    std::string id, body;
    {
        Harness h(opts(shipped_ruleset("hextoo6"), dir));
        id = h.create(2);
        ASSERT_EQ(h.place(id, 0, 0, 1)->status, 200);
        body = h.http().Get("/sessions/" + id)->body;
    }
    EXPECT_TRUE(std::filesystem::exists(dir / (id + ".json")));
    {
        std::ofstream junk(dir / "broken.json");
        junk << "{ not a patch";
    }
    {
        Harness h(opts(shipped_ruleset("hextoo6"), dir));
        EXPECT_EQ(h.svc().session_count(), 1u);
        EXPECT_EQ(h.http().Get("/sessions/" + id)->body, body);
        ASSERT_EQ(h.place(id, 1, 0, 1)->status, 200);
    }
    std::filesystem::remove_all(dir);
}

TEST(Service, ConcurrentPlacementsStayClean)
{
    Harness h(opts(shipped_ruleset("st12")));
    const std::string id = h.create(3);
    std::atomic<int> ok{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < 6; ++t)
        workers.emplace_back([&, t] {
            httplib::Client c("127.0.0.1", h.port());
            const Region board = region_cells(3);
            for (const Cell& cell : board.cells()) {
                if ((cell.q + 3 * cell.r + t) % 3 != 0)
                    continue;
                for (int o = 0; o < 6; ++o) {
                    auto r = Harness::place_with(c, id, cell.q, cell.r, (o + t) % 6, t % 2 ? "F" : "R");
                    if (r && r->status == 200) {
                        ++ok;
                        break;
                    }
                }
            }
        });
    for (auto& w : workers)
        w.join();
    auto r = h.http().Get("/sessions/" + id);
    const Patch p = parse_patch(Json::parse(r->body)["patch"].dump());
    EXPECT_TRUE(verify_patch(p).empty());
    EXPECT_EQ(p.size(), static_cast<std::size_t>(ok.load()));
    EXPECT_EQ(r->get_header_value("X-Revision"), std::to_string(ok.load()));
}

TEST(Service, DirectCallsWithoutTransport)
{
    service::Service svc(opts(shipped_ruleset("unmarked")));
    const auto c = svc.create_session(R"({"radius": 1})");
    ASSERT_EQ(c.status, 201);
    const std::string id = Json::parse(c.body)["id"];
    EXPECT_EQ(svc.legal(id, "0", "0").status, 200);
    EXPECT_EQ(svc.place(id, R"({"q":0,"r":0,"state":{"variant":"T","orientation":0}})").status, 200);
    EXPECT_EQ(svc.session_count(), 1u);
}
