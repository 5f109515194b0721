#include "counterquill/domain.hpp"

#include <array>
#include <utility>

#include "counterquill/error.hpp"

namespace counterquill {

namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<Theme, 5> theme_names{{
    {Theme::race, "race"},
    {Theme::gender, "gender"},
    {Theme::sexual_orientation, "sexual_orientation"},
    {Theme::disability, "disability"},
    {Theme::religion, "religion"},
}};
constexpr NameTable<SpanKind, 2> kind_names{{
    {SpanKind::identity, "identity"},
    {SpanKind::action, "action"},
}};
constexpr NameTable<Condition, 2> condition_names{{
    {Condition::baseline, "baseline"},
    {Condition::counterquill, "counterquill"},
}};
constexpr NameTable<Stage, 8> stage_names{{
    {Stage::created, "created"},
    {Stage::learning, "learning"},
    {Stage::quiz_done, "quiz_done"},
    {Stage::brainstorm_highlight, "brainstorm_highlight"},
    {Stage::brainstorm_qa, "brainstorm_qa"},
    {Stage::writing, "writing"},
    {Stage::questionnaire, "questionnaire"},
    {Stage::complete, "complete"},
}};
constexpr NameTable<NoteSource, 3> source_names{{
    {NoteSource::question1, "question1"},
    {NoteSource::question2, "question2"},
    {NoteSource::highlight_feedback, "highlight_feedback"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E value) {
    for (const auto& [v, name] : table) {
        if (v == value) return name;
    }
    return "unknown";
}

template <typename E, std::size_t N>
E parse_name(const NameTable<E, N>& table, std::string_view s, const char* what) {
    for (const auto& [v, name] : table) {
        if (name == s) return v;
    }
    fail(ErrorCode::invalid_argument, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(Theme v) { return name_of(theme_names, v); }
std::string_view to_string(SpanKind v) { return name_of(kind_names, v); }
std::string_view to_string(Condition v) { return name_of(condition_names, v); }
std::string_view to_string(Stage v) { return name_of(stage_names, v); }
std::string_view to_string(NoteSource v) { return name_of(source_names, v); }

Theme parse_theme(std::string_view s) { return parse_name(theme_names, s, "theme"); }
SpanKind parse_span_kind(std::string_view s) { return parse_name(kind_names, s, "span kind"); }
Condition parse_condition(std::string_view s) {
    return parse_name(condition_names, s, "condition");
}
Stage parse_stage(std::string_view s) { return parse_name(stage_names, s, "stage"); }
NoteSource parse_note_source(std::string_view s) {
    return parse_name(source_names, s, "note source");
}

void to_json(Json& j, const TextSpan& s) {
    j = Json{{"start", s.start}, {"end", s.end}, {"kind", to_string(s.kind)}};
}

void from_json(const Json& j, TextSpan& s) {
    auto start = j.at("start").get<std::int64_t>();
    auto end = j.at("end").get<std::int64_t>();
    if (start < 0 || end < 0) {
        fail(ErrorCode::invalid_argument, "span offsets must be non-negative");
    }
    s.start = static_cast<std::size_t>(start);
    s.end = static_cast<std::size_t>(end);
    s.kind = parse_span_kind(j.at("kind").get<std::string>());
}

void to_json(Json& j, const HateSpeechInstance& h) {
    j = Json{{"id", h.id},
             {"text", h.text},
             {"theme", to_string(h.theme)},
             {"gold_identity", h.gold_identity},
             {"gold_action", h.gold_action}};
}

void from_json(const Json& j, HateSpeechInstance& h) {
    h.id = j.at("id").get<std::string>();
    h.text = j.at("text").get<std::string>();
    h.theme = parse_theme(j.at("theme").get<std::string>());
    h.gold_identity = j.at("gold_identity").get<std::vector<TextSpan>>();
    h.gold_action = j.at("gold_action").get<std::vector<TextSpan>>();
}

void to_json(Json& j, const Participant& p) {
    j = Json{{"id", p.id}, {"index", p.index}, {"demographics", p.demographics}};
}

void from_json(const Json& j, Participant& p) {
    p.id = j.at("id").get<std::string>();
    p.index = j.at("index").get<std::size_t>();
    p.demographics = j.value("demographics", std::map<std::string, std::string>{});
}

void to_json(Json& j, const StudySession& s) {
    Json timings = Json::object();
    for (const auto& [stage, seconds] : s.stage_timings) {
        timings[std::string(to_string(stage))] = seconds;
    }
    j = Json{{"id", s.id},
             {"participant_id", s.participant_id},
             {"condition", to_string(s.condition)},
             {"instance_id", s.instance_id},
             {"stage", to_string(s.stage)},
             {"stage_timings", timings},
             {"created_at", s.created_at},
             {"updated_at", s.updated_at}};
}

void to_json(Json& j, const Note& n) {
    j = Json{{"id", n.id},
             {"session_id", n.session_id},
             {"source", to_string(n.source)},
             {"text", n.text},
             {"created_at", n.created_at}};
}

void from_json(const Json& j, Note& n) {
    n.id = j.at("id").get<std::string>();
    n.session_id = j.at("session_id").get<std::string>();
    n.source = parse_note_source(j.at("source").get<std::string>());
    n.text = j.at("text").get<std::string>();
    n.created_at = j.at("created_at").get<Timestamp>();
}

void to_json(Json& j, const Draft& d) {
    j = Json{{"session_id", d.session_id},
             {"content", d.content},
             {"revision", d.revision},
             {"updated_at", d.updated_at}};
}

}  // namespace counterquill
