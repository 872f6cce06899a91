#include <doctest.h>

#include "api.hpp"
#include "serialization.hpp"
#include "service.hpp"
#include "test_support.hpp"

#include <httplib.h>

#include <thread>

using namespace glyphmcda;
using testing_support::FixtureWorkspace;
using testing_support::fixtures;
using testing_support::run_cli;
using testing_support::sheet_from_scores;
using testing_support::slurp;
using nlohmann::json;

namespace {

// A service on a free local port over a private copy of the fixtures.
struct Running {
    FixtureWorkspace fx;
    Workspace ws{fx.path(), false};
    Service service{ws};
    int port = -1;
    std::thread thread;

    Running() {
        port = service.bind("127.0.0.1", 0);
        REQUIRE(port > 0);
        thread = std::thread([this] { service.run(); });
        service.wait_until_ready();
    }
    ~Running() {
        service.stop();
        thread.join();
    }

    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(20, 0);
        return c;
    }
};

const httplib::Headers kAlice = {{"X-Assessor", "alice"}};

std::string error_kind(const httplib::Result& r) {
    return json::parse(r->body)["error"];
}

}  // namespace

TEST_CASE("health and listings") {
    Running s;
    auto c = s.client();
    auto r = c.Get("/health");
    REQUIRE(r);
    CHECK(r->status == 200);

    r = c.Get("/designs");
    REQUIRE(r);
    CHECK(json::parse(r->body)["designs"].size() == 10);

    r = c.Get("/sheets/J1");
    REQUIRE(r);
    CHECK(json::parse(r->body)["assessors"] == json({"mean"}));
    CHECK(c.Get("/sheets/nope")->status == 404);
}

TEST_CASE("documents come back with revision tags") {
    Running s;
    auto c = s.client();
    auto r = c.Get("/designs/designA");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(r->body == slurp(s.fx.path() / "designs" / "designA.json"));
    CHECK(r->get_header_value("ETag") == "\"" + s.ws.design_revision("designA") + "\"");

    r = c.Get("/sheets/designA/a1");
    REQUIRE(r);
    CHECK(r->body == serialize_sheet(s.ws.get_sheet("designA", "a1")));
    CHECK(c.Get("/designs/designZ")->status == 404);
    CHECK(c.Get("/sheets/designA/zed")->status == 404);
}

TEST_CASE("sheet writes need an assessor and honour If-Match") {
    Running s;
    auto c = s.client();
    const std::string etag = c.Get("/sheets/designA/a1")->get_header_value("ETag");
    auto sheet = s.ws.get_sheet("designA", "a1");
    sheet.timestamp = "2024-03-05T08:00:00Z";
    const std::string body = serialize_sheet(sheet);

    auto r = c.Put("/sheets/designA/a1", body, "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(json::parse(r->body)["path"] == "/headers/X-Assessor");

    httplib::Headers h = kAlice;
    h.emplace("If-Match", etag);
    r = c.Put("/sheets/designA/a1", h, body, "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    const std::string fresh = r->get_header_value("ETag");
    CHECK(fresh != etag);
    CHECK(json::parse(r->body)["revision"] == fresh.substr(1, fresh.size() - 2));

    // the old tag is now stale
    r = c.Put("/sheets/designA/a1", h, body, "application/json");
    REQUIRE(r);
    CHECK(r->status == 409);
    CHECK(error_kind(r) == "conflict");

    // the URL must match the document
    r = c.Put("/sheets/designA/other", kAlice, body, "application/json");
    CHECK(r->status == 400);
}

TEST_CASE("a score of 7 is a validation error") {
    Running s;
    auto c = s.client();
    json doc = json::parse(serialize_sheet(sheet_from_scores("designA", {"4"}, "alice")));
    doc["assessments"][0]["direct_score"] = "7";
    auto r = c.Put("/sheets/designA/alice", kAlice, doc.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    const auto err = json::parse(r->body);
    CHECK(err["error"] == "validation");
    CHECK(err["path"] == "/assessments/0/direct_score");
    CHECK_FALSE(s.ws.has_sheet("designA", "alice"));
}

TEST_CASE("design writes") {
    Running s;
    auto c = s.client();
    auto design = s.ws.get_design("designB");
    design.id = "designX";
    auto r = c.Put("/designs/designX", kAlice, serialize_design(design), "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(s.ws.has_design("designX"));

    r = c.Put("/designs/designY", kAlice, serialize_design(design), "application/json");
    CHECK(r->status == 400);
    r = c.Put("/designs/designX", kAlice, "{broken", "application/json");
    CHECK(r->status == 400);
}

TEST_CASE("aggregation, comparison and reports") {
    Running s;
    auto c = s.client();
    auto r = c.Post("/aggregate/designA", "", "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(json::parse(r->body)["weighted_average"] == "4.66");

    r = c.Post("/aggregate/designA?format=text", R"({"assessor": "a1"})", "application/json");
    CHECK(r->body.find("Total Weight & Weighted Average") != std::string::npos);
    CHECK(c.Post("/aggregate/designZ", "", "application/json")->status == 404);
    CHECK(c.Post("/aggregate/designA", R"({"merge": "vote"})", "application/json")->status == 400);

    r = c.Get("/compare?ids=J1,J2,J3,J4,J5");
    REQUIRE(r);
    const auto ranking = json::parse(r->body);
    CHECK(ranking["order"][0]["design"] == "J1");
    CHECK(ranking["order"][4]["design"] == "J5");
    CHECK(c.Get("/compare?ids=J1")->status == 400);

    r = c.Get("/report?ids=designA,designB&format=text");
    CHECK(r->body.find("3.21") != std::string::npos);
}

TEST_CASE("derive, validate and knowledge base") {
    Running s;
    auto c = s.client();
    auto r = c.Post("/derive/attention_importance", R"({"boxes": {"n11": 2, "n22": 2}})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto out = json::parse(r->body);
    CHECK(out["C"] == 1.0);
    CHECK(out["level"] == 5);

    // zero variance cannot be scored
    r = c.Post("/derive/attention_importance", R"({"boxes": {"n11": 2, "n12": 2}})", "application/json");
    CHECK(r->status == 422);
    CHECK(error_kind(r) == "criterion_input");

    r = c.Post("/derive/discernability", R"({"easy": "many"})", "application/json");
    CHECK(r->status == 400);
    CHECK(json::parse(r->body)["path"] == "/easy");
    CHECK(c.Post("/derive/beauty", "{}", "application/json")->status == 400);

    r = c.Post("/validate", slurp(fixtures() / "broken.json"), "application/json");
    CHECK(json::parse(r->body)["violations"].size() == 4);

    r = c.Get("/kop/color");
    CHECK(json::parse(r->body)["ratings"]["ordered"] == "can-be");
    CHECK(c.Get("/kop/custom")->status == 404);
}

TEST_CASE("invariance sheets over HTTP") {
    Running s;
    auto c = s.client();
    GlyphImage img(20, 20, 4, 200);
    const auto png = encode_png(img);
    const std::string body(png.begin(), png.end());

    auto r = c.Post("/invariance/geometry?vd=100", body, "image/png");
    REQUIRE(r);
    CHECK(r->status == 200);
    const auto doc = json::parse(r->body);
    CHECK(doc["manifest"]["cells"].size() == 5);
    CHECK(doc["manifest"]["parameters"]["vd_cm"] == "100.0000");

    r = c.Post("/invariance/colorimetry", body, "image/png");
    CHECK(json::parse(r->body)["manifest"]["cells"].size() == 20);

    CHECK(c.Post("/invariance/geometry?vf=wide", body, "image/png")->status == 400);
    CHECK(c.Post("/invariance/colorimetry", "not a png", "image/png")->status == 400);
}

TEST_CASE("responses equal the library calls byte for byte") {
    Running s;
    auto c = s.client();
    CHECK(c.Post("/aggregate/designB", "", "application/json")->body ==
          api::aggregate(s.ws, "designB", {}, api::Format::structured));
    CHECK(c.Get("/compare?ids=J1,J2,J3&format=text")->body ==
          api::compare(s.ws, {"J1", "J2", "J3"}, api::Format::text));
    CHECK(c.Post("/derive/memorability", R"({"pct_1h": 95, "pct_24h": 60})", "application/json")->body ==
          api::derive("memorability", R"({"pct_1h": 95, "pct_24h": 60})"));
    CHECK(c.Get("/kop/shape")->body == api::kop("shape"));
}

TEST_CASE("the command-line tool and the service agree") {
    Running s;
    auto c = s.client();
    const std::string ws = "-w '" + s.fx.path().string() + "' ";
    const auto cli = run_cli(ws + "aggregate designC --assessor a1 --format structured");
    REQUIRE(cli.status == 0);
    CHECK(cli.out == c.Post("/aggregate/designC", R"({"assessor": "a1"})", "application/json")->body);

    const auto cmp = run_cli(ws + "compare J1 J2 J3 J4 J5 --format text");
    REQUIRE(cmp.status == 0);
    CHECK(cmp.out == c.Get("/compare?ids=J1,J2,J3,J4,J5&format=text")->body);
}

TEST_CASE("concurrent readers see consistent documents") {
    Running s;
    const std::string expected = api::aggregate(s.ws, "J3", {}, api::Format::structured);
    std::vector<std::thread> threads;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 6; ++t) {
        threads.emplace_back([&] {
            auto c = s.client();
            for (int i = 0; i < 10; ++i) {
                auto r = c.Post("/aggregate/J3", "", "application/json");
                if (!r || r->body != expected) ++mismatches;
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(mismatches == 0);
}
