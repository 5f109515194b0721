#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace counterquill {

using Json = nlohmann::json;

// Milliseconds since the Unix epoch, as recorded on events.
using Timestamp = std::int64_t;

enum class Theme { race, gender, sexual_orientation, disability, religion };
enum class SpanKind { identity, action };
enum class Condition { baseline, counterquill };
enum class Stage {
    created,
    learning,
    quiz_done,
    brainstorm_highlight,
    brainstorm_qa,
    writing,
    questionnaire,
    complete,
};
enum class NoteSource { question1, question2, highlight_feedback };

inline constexpr Theme all_themes[] = {Theme::race, Theme::gender,
                                       Theme::sexual_orientation, Theme::disability,
                                       Theme::religion};
inline constexpr Stage all_stages[] = {
    Stage::created,       Stage::learning, Stage::quiz_done,     Stage::brainstorm_highlight,
    Stage::brainstorm_qa, Stage::writing,  Stage::questionnaire, Stage::complete};
inline constexpr Condition all_conditions[] = {Condition::baseline, Condition::counterquill};

std::string_view to_string(Theme v);
std::string_view to_string(SpanKind v);
std::string_view to_string(Condition v);
std::string_view to_string(Stage v);
std::string_view to_string(NoteSource v);

// Parsers throw Error(invalid_argument) on unknown names.
Theme parse_theme(std::string_view s);
SpanKind parse_span_kind(std::string_view s);
Condition parse_condition(std::string_view s);
Stage parse_stage(std::string_view s);
NoteSource parse_note_source(std::string_view s);

// Half-open codepoint range [start, end).
struct TextSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    SpanKind kind = SpanKind::identity;

    std::size_t length() const { return end - start; }
    friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

struct HateSpeechInstance {
    std::string id;
    std::string text;
    Theme theme = Theme::race;
    std::vector<TextSpan> gold_identity;
    std::vector<TextSpan> gold_action;

    friend bool operator==(const HateSpeechInstance&, const HateSpeechInstance&) = default;
};

struct Participant {
    std::string id;
    std::size_t index = 0;
    std::map<std::string, std::string> demographics;

    friend bool operator==(const Participant&, const Participant&) = default;
};

struct StudySession {
    std::string id;
    std::string participant_id;
    Condition condition = Condition::counterquill;
    std::string instance_id;
    Stage stage = Stage::created;
    std::map<Stage, double> stage_timings;
    Timestamp created_at = 0;
    Timestamp updated_at = 0;
    Timestamp stage_entered_at = 0;

    friend bool operator==(const StudySession&, const StudySession&) = default;
};

struct Note {
    std::string id;
    std::string session_id;
    NoteSource source = NoteSource::question1;
    std::string text;
    Timestamp created_at = 0;

    friend bool operator==(const Note&, const Note&) = default;
};

struct Draft {
    std::string session_id;
    std::string content;
    std::uint64_t revision = 0;
    Timestamp updated_at = 0;

    friend bool operator==(const Draft&, const Draft&) = default;
};

void to_json(Json& j, const TextSpan& s);
void from_json(const Json& j, TextSpan& s);
void to_json(Json& j, const HateSpeechInstance& h);
void from_json(const Json& j, HateSpeechInstance& h);
void to_json(Json& j, const Participant& p);
void from_json(const Json& j, Participant& p);
void to_json(Json& j, const StudySession& s);
void to_json(Json& j, const Note& n);
void from_json(const Json& j, Note& n);
void to_json(Json& j, const Draft& d);

}  // namespace counterquill
