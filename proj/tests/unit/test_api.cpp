#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "counterquill/server/api.hpp"
#include "counterquill/server/config.hpp"
#include "service_fixture.hpp"
#include "support.hpp"

using namespace counterquill;
using namespace counterquill::server;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    std::random_device rd;
    return fs::temp_directory_path() / ("cq-" + tag + "-" + std::to_string(rd()));
}

EnvLookup fake_env(std::map<std::string, std::string> vars) {
    return [vars](const std::string& k) -> std::optional<std::string> {
        auto it = vars.find(k);
        if (it == vars.end()) return std::nullopt;
        return it->second;
    };
}

ServerConfig test_config(const fs::path& dir) {
    ServerConfig c;
    c.data_dir = dir;
    c.initial_backoff_ms = 1;
    return c;
}

// A running server plus a client carrying the bearer token.
struct Live {
    Runtime rt;
    HttpServer server;
    std::thread thread;
    int port = 0;
    httplib::Client client;

    explicit Live(Runtime runtime)
        : rt(std::move(runtime)),
          server(*rt.service, rt.auth_token),
          port(server.bind("127.0.0.1", 0)),
          client("127.0.0.1", port) {
        thread = std::thread([this] { server.listen_after_bind(); });
        while (!server.running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
        if (!rt.auth_token.empty()) client.set_bearer_token_auth(rt.auth_token);
    }
    ~Live() {
        server.stop();
        thread.join();
    }

    std::pair<int, Json> post(const std::string& path, const Json& body = Json::object()) {
        auto res = client.Post(path, body.dump(), "application/json");
        REQUIRE(res);
        return {res->status, Json::parse(res->body)};
    }
    std::pair<int, Json> get(const std::string& path) {
        auto res = client.Get(path);
        REQUIRE(res);
        return {res->status, Json::parse(res->body, nullptr, false)};
    }
};

void expect_error(const std::pair<int, Json>& r, int status, const std::string& code) {
    CHECK(r.first == status);
    CHECK(r.second.value("code", "") == code);
    CHECK(!r.second.value("message", "").empty());
}

}  // namespace

TEST_CASE("status mapping") {
    CHECK(http_status(ErrorCode::invalid_argument) == 400);
    CHECK(http_status(ErrorCode::out_of_range) == 400);
    CHECK(http_status(ErrorCode::unauthorized) == 401);
    CHECK(http_status(ErrorCode::not_found) == 404);
    CHECK(http_status(ErrorCode::stage) == 409);
    CHECK(http_status(ErrorCode::conflict) == 409);
    CHECK(http_status(ErrorCode::not_pending) == 409);
    CHECK(http_status(ErrorCode::duplicate) == 409);
    CHECK(http_status(ErrorCode::busy) == 423);
    CHECK(http_status(ErrorCode::provenance) == 422);
    CHECK(http_status(ErrorCode::insufficient_corpus) == 422);
    CHECK(http_status(ErrorCode::provider_error) == 502);
    CHECK(http_status(ErrorCode::unparseable) == 502);
    CHECK(http_status(ErrorCode::exhausted_retries) == 503);
    CHECK(http_status(ErrorCode::timeout) == 504);
    CHECK(http_status(ErrorCode::corrupt_log) == 500);
    auto r = error_response(ErrorCode::busy, "m");
    CHECK(Json::parse(r.body) == Json{{"code", "busy"}, {"message", "m"}});
}

TEST_CASE("config parsing") {
    auto c = parse_config(Json{{"port", 9000}, {"provider", "live"}, {"data_dir", "/tmp/x"}});
    CHECK(c.port == 9000);
    CHECK(c.provider == ProviderMode::live);
    CHECK(c.bind == "127.0.0.1");
    CHECK(parse_config(to_json_value(c)).port == 9000);
    CHECK_ERROR_CODE(parse_config(Json{{"prot", 1}}), ErrorCode::config);
    CHECK_ERROR_CODE(parse_config(Json{{"port", "80"}}), ErrorCode::config);
    CHECK_ERROR_CODE(parse_config(Json{{"port", 70000}}), ErrorCode::config);
    CHECK_ERROR_CODE(parse_config(Json{{"provider", "remote"}}), ErrorCode::config);
    CHECK_ERROR_CODE(parse_config(Json{{"deadline_ms", 0}}), ErrorCode::config);
    CHECK_ERROR_CODE(parse_config(Json::array()), ErrorCode::config);
    CHECK_ERROR_CODE(load_config("/nonexistent/cq.json"), ErrorCode::config);
}

TEST_CASE("runtime checks") {
    auto dir = temp_dir("runtime");
    auto c = test_config(dir);
    c.provider = ProviderMode::live;
    CHECK_ERROR_CODE(build_runtime(c, fake_env({})), ErrorCode::config);
    CHECK_ERROR_CODE(build_runtime(c, fake_env({{"COUNTERQUILL_API_KEY", ""}})), ErrorCode::config);
    auto live = build_runtime(c, fake_env({{"COUNTERQUILL_API_KEY", "sk"}}));
    CHECK(live.provider->name() == "live");
    c.provider = ProviderMode::mock;
    c.corpus_path = dir / "missing.jsonl";
    CHECK_ERROR_CODE(build_runtime(c, fake_env({})), ErrorCode::config);
    c.corpus_path.clear();
    {
        std::ofstream(dir / "blocker") << "x";
    }
    c.data_dir = dir / "blocker" / "sub";
    CHECK_ERROR_CODE(build_runtime(c, fake_env({})), ErrorCode::config);
    fs::remove_all(dir);
}

TEST_CASE("HTTP session flow, errors and restart") {
    auto dir = temp_dir("api");
    const auto env = fake_env({{"COUNTERQUILL_AUTH_TOKEN", "s3cret"}});
    std::string sid;
    Json final_view;
    std::string export_csv;
    {
        Live live(build_runtime(test_config(dir), env, fixtures::ticking_clock()));
        auto& cl = live.client;

        httplib::Client anon("127.0.0.1", live.port);
        auto health = anon.Get("/health");
        REQUIRE(health);
        CHECK(health->status == 200);
        auto denied = anon.Get("/curriculum");
        REQUIRE(denied);
        CHECK(denied->status == 401);
        CHECK(Json::parse(denied->body)["code"] == "unauthorized");
        anon.set_bearer_token_auth("s3cre7");
        CHECK(anon.Get("/curriculum")->status == 401);

        auto [cs, curriculum] = live.get("/curriculum");
        CHECK(cs == 200);
        CHECK(curriculum["sections"].size() == 6);
        CHECK(curriculum["questions"].size() == 4);

        auto [st, session] = live.post("/sessions", {{"participant_id", "P01"},
                                                     {"condition", "counterquill"},
                                                     {"instance_id", "a1-03"},
                                                     {"demographics", {{"age", "18-24"}}}});
        CHECK(st == 201);
        sid = session["id"];
        CHECK(session["stage"] == "created");

        expect_error(live.post("/sessions/" + sid + "/quiz", {{"answers", {"C", "B", "D", "B"}}}), 409, "stage");
        CHECK(live.post("/sessions/" + sid + "/start").first == 200);
        expect_error(live.post("/sessions/" + sid + "/quiz", {{"answers", {"C", "B", "D"}}}), 400, "invalid_argument");
        auto [qs, quiz] = live.post("/sessions/" + sid + "/quiz", {{"answers", {"C", "B", "D", "B"}}});
        CHECK(qs == 200);
        CHECK(quiz["n_correct"] == 4);

        auto [ps, practice] = live.post("/sessions/" + sid + "/highlight-practice");
        CHECK(ps == 200);
        CHECK(practice["instance"]["id"] == "a1-03");
        CHECK(practice["instance"].contains("gold_identity") == false);
        expect_error(live.get("/sessions/" + sid + "/diff"), 404, "not_found");

        auto [hs, hl] = live.post("/sessions/" + sid + "/highlights",
                                  {{"identity", {{{"start", 15}, {"end", 24}}}},
                                   {"action", {{{"start", 25}, {"end", 39}}}}});
        CHECK(hs == 200);
        CHECK(hl["identity_equivalent"] == true);
        CHECK(hl["action_equivalent"] == false);
        CHECK(hl["stage"] == "brainstorm_highlight");
        expect_error(live.post("/sessions/" + sid + "/highlights", {{"identity", {{{"start", 15}, {"end", 999}}}}}),
                     400, "invalid_argument");
        auto [hs2, hl2] = live.post("/sessions/" + sid + "/highlights",
                                    {{"identity", {{{"start", 15}, {"end", 24}}}},
                                     {"action", {{{"start", 71}, {"end", 77}}}}});
        CHECK(hl2["stage"] == "brainstorm_qa");
        CHECK(hl2["attempt"] == 2);
        auto [ds, diff] = live.get("/sessions/" + sid + "/diff");
        CHECK(ds == 200);
        CHECK(diff["gold"]["action"][0]["start"] == 66);

        expect_error(live.post("/sessions/" + sid + "/writing"), 409, "stage");
        auto [as1, sug1] = live.post("/sessions/" + sid + "/answers", {{"question", 1}, {"text", "Black men are seen as a threat."}});
        CHECK(as1 == 200);
        auto [as2, sug2] = live.post("/sessions/" + sid + "/answers", {{"question", 2}, {"text", "Unsafe at home."}});
        expect_error(live.post("/sessions/" + sid + "/notes", {{"source", "question1"}, {"text", "not in there"}}),
                     422, "provenance");
        auto [ns, note] = live.post("/sessions/" + sid + "/notes",
                                    {{"source", "question1"}, {"text", sug1["text"].get<std::string>().substr(0, 25)}});
        CHECK(ns == 201);
        live.post("/sessions/" + sid + "/notes", {{"source", "question2"}, {"text", sug2["text"]}});
        CHECK(live.get("/sessions/" + sid + "/notes").second.size() == 2);

        auto [ws, draft] = live.post("/sessions/" + sid + "/writing");
        CHECK(ws == 200);
        CHECK(draft["revision"] == 1);
        CHECK(draft["content"] == "Black men are seen as a threat.\n\nUnsafe at home.");

        auto [rs, ex] = live.post("/sessions/" + sid + "/rewrites",
                                  {{"start", 0}, {"end", 31}, {"mode", {{"kind", "use_note"}, {"note_index", 2}}}});
        CHECK(rs == 201);
        CHECK(ex["status"] == "pending");
        const std::string exid = ex["id"];
        expect_error(live.post("/sessions/" + sid + "/rewrites", {{"start", 0}, {"end", 3}, {"mode", {{"kind", "grammar"}}}}),
                     423, "busy");
        auto [rt2, retried] = live.post("/rewrites/" + exid + "/retry");
        CHECK(rt2 == 201);
        CHECK(live.get("/rewrites/" + exid).second["status"] == "retried");
        expect_error(live.post("/rewrites/" + exid + "/insert"), 409, "not_pending");
        auto [is, inserted] = live.post("/rewrites/" + retried["id"].get<std::string>() + "/insert");
        CHECK(is == 200);
        CHECK(inserted["revision"] == 2);

        auto [rs2, ex2] = live.post("/sessions/" + sid + "/rewrites",
                                    {{"start", 0}, {"end", 5}, {"mode", {{"kind", "empathetic"}}}});
        live.post("/sessions/" + sid + "/draft", {{"content", "Edited by hand."}});
        expect_error(live.post("/rewrites/" + ex2["id"].get<std::string>() + "/insert"), 409, "conflict");
        CHECK(live.get("/sessions/" + sid + "/draft?history=true").second.size() == 3);
        CHECK(live.get("/sessions/" + sid + "/draft").second["content"] == "Edited by hand.");

        expect_error(live.post("/sessions/" + sid + "/questionnaire", {{"instrument", "nasa_tlx"}, {"items", {1, 2, 3, 4, 5, 9}}}),
                     400, "out_of_range");
        CHECK(live.post("/sessions/" + sid + "/questionnaire", {{"instrument", "nasa_tlx"}, {"items", {2, 2, 3, 6, 3, 1}}}).first == 201);
        expect_error(live.post("/sessions/" + sid + "/questionnaire", {{"instrument", "nasa_tlx"}, {"items", {2, 2, 3, 6, 3, 1}}}),
                     409, "duplicate");
        live.post("/sessions/" + sid + "/questionnaire", {{"instrument", "custom"}, {"items", {6, 6, 6, 6, 6, 6}}});

        final_view = live.get("/sessions/" + sid).second;
        CHECK(final_view["session"]["stage"] == "complete");

        // Transport-level errors.
        expect_error(live.get("/sessions/s-99"), 404, "not_found");
        expect_error(live.get("/nowhere"), 404, "not_found");
        auto bad = cl.Post("/sessions", "{not json", "application/json");
        REQUIRE(bad);
        CHECK(bad->status == 400);
        auto put = cl.Put("/sessions/" + sid + "/draft", "{}", "application/json");
        REQUIRE(put);
        CHECK(put->status == 405);
        CHECK(Json::parse(put->body)["code"] == "method_not_allowed");
        expect_error(live.post("/sessions", {{"participant_id", "P02"}, {"condition", "control"}}), 400, "invalid_argument");
        expect_error(live.post("/sessions", {{"condition", "baseline"}}), 400, "invalid_argument");

        auto csv = cl.Get("/study/export");
        REQUIRE(csv);
        CHECK(csv->status == 200);
        CHECK(csv->get_header_value("Content-Type").rfind("text/csv", 0) == 0);
        export_csv = csv->body;
        CHECK(study::read_dataset(export_csv).size() == 1);
        auto js = live.get("/study/export?format=json");
        CHECK(js.second[0]["participant_id"] == "P01");
        CHECK(js.second[0]["tlx_performance"] == "6");
    }

    // A second process over the same data directory serves the same state.
    {
        Live live(build_runtime(test_config(dir), env));
        CHECK(live.get("/sessions/" + sid).second == final_view);
        CHECK(live.client.Get("/study/export")->body == export_csv);
        CHECK(live.get("/sessions").second.size() == 1);
    }
    fs::remove_all(dir);
}

TEST_CASE("authentication is off without a token") {
    auto dir = temp_dir("noauth");
    Live live(build_runtime(test_config(dir), fake_env({})));
    CHECK(live.get("/curriculum").first == 200);
    fs::remove_all(dir);
}
