#include "counterquill/server/api.hpp"

#include <httplib.h>

#include <string_view>
#include <vector>

#include "counterquill/error.hpp"
#include "counterquill/learning.hpp"

namespace counterquill::server {

namespace {

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        auto j = path.find('/', i);
        if (j == std::string::npos) j = path.size();
        if (j > i) parts.push_back(path.substr(i, j - i));
        i = j + 1;
    }
    return parts;
}

ApiResponse json_response(const Json& j, int status = 200) { return {status, j.dump(), "application/json"}; }

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::invalid_argument, "request body is not valid JSON");
    if (!j.is_object()) fail(ErrorCode::invalid_argument, "request body must be a JSON object");
    return j;
}

template <typename T>
T field(const Json& body, const char* key) {
    if (!body.contains(key)) fail(ErrorCode::invalid_argument, std::string("missing field '") + key + "'");
    try {
        return body.at(key).get<T>();
    } catch (const Json::exception&) {
        fail(ErrorCode::invalid_argument, std::string("field '") + key + "' has the wrong type");
    }
}

// Spans may omit "kind"; the list they arrive in decides it.
std::vector<TextSpan> spans_field(const Json& body, const char* key, SpanKind kind) {
    std::vector<TextSpan> out;
    if (!body.contains(key)) return out;
    const auto& list = body.at(key);
    if (!list.is_array()) fail(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a list");
    for (auto item : list) {
        if (!item.is_object()) fail(ErrorCode::invalid_argument, "spans must be objects");
        if (!item.contains("kind")) item["kind"] = to_string(kind);
        out.push_back(item.get<TextSpan>());
    }
    return out;
}

bool query_flag(const ApiRequest& r, const std::string& key) {
    auto it = r.query.find(key);
    return it != r.query.end() && (it->second == "true" || it->second == "1");
}

std::string query_value(const ApiRequest& r, const std::string& key) {
    auto it = r.query.find(key);
    return it == r.query.end() ? std::string{} : it->second;
}

bool same_token(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    unsigned char diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff |= static_cast<unsigned char>(a[i] ^ b[i]);
    return diff == 0;
}

Json dataset_json(const std::vector<study::DatasetRow>& rows) {
    // Same column names and values as the CSV form.
    const auto records = study::parse_csv(study::write_dataset(rows));
    Json out = Json::array();
    for (std::size_t r = 1; r < records.size(); ++r) {
        Json row = Json::object();
        for (std::size_t c = 0; c < records[0].size(); ++c) row[records[0][c]] = records[r][c];
        out.push_back(row);
    }
    return out;
}

struct MethodNotAllowed {};

}  // namespace

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument:
        case ErrorCode::out_of_range: return 400;
        case ErrorCode::unauthorized: return 401;
        case ErrorCode::not_found: return 404;
        case ErrorCode::stage:
        case ErrorCode::conflict:
        case ErrorCode::not_pending:
        case ErrorCode::duplicate: return 409;
        case ErrorCode::busy: return 423;
        case ErrorCode::provenance:
        case ErrorCode::insufficient_corpus: return 422;
        case ErrorCode::unparseable:
        case ErrorCode::provider_error: return 502;
        case ErrorCode::exhausted_retries: return 503;
        case ErrorCode::timeout: return 504;
        case ErrorCode::corrupt_log:
        case ErrorCode::config: return 500;
    }
    return 500;
}

ApiResponse error_response(ErrorCode code, const std::string& message) {
    return json_response({{"code", to_string(code)}, {"message", message}}, http_status(code));
}

Api::Api(Service& service, std::string auth_token)
    : service_(service), auth_token_(std::move(auth_token)) {}

ApiResponse Api::handle(const ApiRequest& r) const {
    const auto p = split_path(r.path);
    const bool get = r.method == "GET";
    const bool post = r.method == "POST";
    auto& svc = service_;
    try {
        if (p.size() == 1 && p[0] == "health") {
            if (!get) throw MethodNotAllowed{};
            return json_response({{"status", "ok"}});
        }
        if (!auth_token_.empty()) {
            constexpr std::string_view scheme = "Bearer ";
            const std::string_view header = r.authorization;
            if (header.substr(0, scheme.size()) != scheme ||
                !same_token(header.substr(scheme.size()), auth_token_)) {
                return error_response(ErrorCode::unauthorized, "missing or wrong bearer token");
            }
        }
        if (p.size() == 1 && p[0] == "curriculum") {
            if (!get) throw MethodNotAllowed{};
            return json_response(learning::to_json_value(learning::get_curriculum()));
        }
        if (p.size() == 2 && p[0] == "study" && p[1] == "export") {
            if (!get) throw MethodNotAllowed{};
            const auto rows = svc.export_dataset();
            if (query_value(r, "format") == "json") return json_response(dataset_json(rows));
            return {200, study::write_dataset(rows), "text/csv; charset=utf-8"};
        }
        if (p.size() >= 1 && p[0] == "sessions") {
            if (p.size() == 1) {
                if (get) {
                    Json out = Json::array();
                    for (const auto& s : svc.sessions()) out.push_back(s);
                    return json_response(out);
                }
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                CreateSessionRequest req;
                req.participant_id = field<std::string>(body, "participant_id");
                req.condition = parse_condition(field<std::string>(body, "condition"));
                if (body.contains("instance_id")) req.instance_id = field<std::string>(body, "instance_id");
                if (body.contains("participant_index")) {
                    const auto index = field<long long>(body, "participant_index");
                    if (index < 0) fail(ErrorCode::invalid_argument, "participant_index must be >= 0");
                    req.participant_index = static_cast<std::size_t>(index);
                }
                if (body.contains("demographics")) {
                    req.demographics = field<std::map<std::string, std::string>>(body, "demographics");
                }
                return json_response(Json(svc.create_session(req)), 201);
            }
            const auto& id = p[1];
            if (p.size() == 2) {
                if (!get) throw MethodNotAllowed{};
                return json_response(svc.session_view(id));
            }
            if (p.size() != 3) return error_response(ErrorCode::not_found, "no route " + r.path);
            const auto& op = p[2];
            if (op == "start") {
                if (!post) throw MethodNotAllowed{};
                return json_response(Json(svc.start_learning(id)));
            }
            if (op == "quiz") {
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                return json_response(learning::to_json_value(
                    svc.grade_quiz(id, field<std::vector<std::string>>(body, "answers"))));
            }
            if (op == "highlight-practice") {
                if (!post) throw MethodNotAllowed{};
                return json_response(to_json_value(svc.start_highlight_practice(id)));
            }
            if (op == "highlights") {
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                auto outcome = svc.submit_highlights(id, spans_field(body, "identity", SpanKind::identity),
                                                     spans_field(body, "action", SpanKind::action));
                auto out = brainstorm::to_json_value(outcome.feedback);
                out["attempt"] = outcome.attempt;
                out["stage"] = to_string(outcome.stage);
                return json_response(out);
            }
            if (op == "diff") {
                if (!get) throw MethodNotAllowed{};
                return json_response(to_json_value(svc.view_diff(id)));
            }
            if (op == "answers") {
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                auto s = svc.submit_answer(id, field<int>(body, "question"), field<std::string>(body, "text"));
                return json_response({{"session_id", s.session_id},
                                      {"question", s.question},
                                      {"text", s.text},
                                      {"generated_at", s.generated_at}});
            }
            if (op == "notes") {
                if (get) return json_response(Json(svc.list_notes(id)));
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                auto note = svc.take_note(id, parse_note_source(field<std::string>(body, "source")),
                                          field<std::string>(body, "text"));
                return json_response(Json(note), 201);
            }
            if (op == "writing") {
                if (!post) throw MethodNotAllowed{};
                return json_response(Json(svc.open_writing(id)));
            }
            if (op == "draft") {
                if (get) {
                    if (query_flag(r, "history")) return json_response(Json(svc.draft_history(id)));
                    return json_response(Json(svc.get_draft(id)));
                }
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                return json_response(Json(svc.save_draft(id, field<std::string>(body, "content"))));
            }
            if (op == "rewrites") {
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                const auto start = field<long long>(body, "start");
                const auto end = field<long long>(body, "end");
                if (start < 0 || end < 0) fail(ErrorCode::invalid_argument, "selection offsets must be >= 0");
                if (!body.contains("mode")) fail(ErrorCode::invalid_argument, "missing field 'mode'");
                auto ex = svc.request_rewrite(id, static_cast<std::size_t>(start),
                                              static_cast<std::size_t>(end),
                                              llm::rewrite_mode_from_json(body.at("mode")));
                return json_response(cowrite::to_json_value(ex), 201);
            }
            if (op == "questionnaire") {
                if (!post) throw MethodNotAllowed{};
                const auto body = parse_body(r.body);
                auto resp = svc.capture_questionnaire(
                    id, study::parse_instrument(field<std::string>(body, "instrument")),
                    field<std::vector<int>>(body, "items"));
                return json_response(to_json_value(resp), 201);
            }
            return error_response(ErrorCode::not_found, "no route " + r.path);
        }
        if (p.size() >= 2 && p[0] == "rewrites") {
            const auto& id = p[1];
            if (p.size() == 2) {
                if (!get) throw MethodNotAllowed{};
                return json_response(cowrite::to_json_value(svc.get_exchange(id)));
            }
            if (p.size() == 3 && p[2] == "insert") {
                if (!post) throw MethodNotAllowed{};
                return json_response(Json(svc.insert_result(id)));
            }
            if (p.size() == 3 && p[2] == "retry") {
                if (!post) throw MethodNotAllowed{};
                return json_response(cowrite::to_json_value(svc.retry_rewrite(id)), 201);
            }
        }
        return error_response(ErrorCode::not_found, "no route " + r.path);
    } catch (const MethodNotAllowed&) {
        return json_response({{"code", "method_not_allowed"},
                              {"message", r.method + " is not supported on " + r.path}},
                             405);
    } catch (const Error& e) {
        return error_response(e.code(), e.what());
    } catch (const Json::exception& e) {
        return error_response(ErrorCode::invalid_argument, e.what());
    }
}

HttpServer::HttpServer(Service& service, std::string auth_token)
    : api_(service, std::move(auth_token)), server_(std::make_unique<httplib::Server>()) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest r;
        r.method = req.method;
        r.path = req.path;
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        r.body = req.body;
        r.authorization = req.get_header_value("Authorization");
        auto out = api_.handle(r);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    server_->Get(R"(/.*)", handler);
    server_->Post(R"(/.*)", handler);
    server_->Put(R"(/.*)", handler);
    server_->Patch(R"(/.*)", handler);
    server_->Delete(R"(/.*)", handler);
    server_->set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                      std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(Json{{"code", "internal"}, {"message", what}}.dump(), "application/json");
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

}  // namespace counterquill::server
