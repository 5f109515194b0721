#include "counterquill/learning.hpp"

#include "counterquill/bundled_data.hpp"
#include "counterquill/error.hpp"

namespace counterquill::learning {

namespace {

// Server-side only. Inferred by checking each option against the lesson
// content; see docs/quiz-key.md.
constexpr std::array<char, quiz_length> answer_key = {'C', 'B', 'D', 'B'};

Track parse_track(std::string_view s) {
    if (s == "hate_speech") return Track::hate_speech;
    if (s == "counterspeech") return Track::counterspeech;
    fail(ErrorCode::invalid_argument, "unknown lesson track '" + std::string(s) + "'");
}

char parse_label(std::string_view s) {
    if (s.size() != 1 || s[0] < 'A' || s[0] > 'D') {
        fail(ErrorCode::invalid_argument, "quiz answers must be one of A, B, C, D");
    }
    return s[0];
}

}  // namespace

std::string_view to_string(Track t) {
    return t == Track::hate_speech ? "hate_speech" : "counterspeech";
}

Curriculum parse_curriculum(const Json& document) {
    Curriculum c;
    try {
        c.version = document.at("version").get<std::string>();
        for (const auto& s : document.at("sections")) {
            c.sections.push_back({parse_track(s.at("track").get<std::string>()),
                                  s.at("ordinal").get<int>(), s.at("title").get<std::string>(),
                                  s.at("body").get<std::string>()});
        }
        for (const auto& q : document.at("questions")) {
            QuizQuestion question{q.at("ordinal").get<int>(), q.at("prompt").get<std::string>(), {}};
            for (const auto& o : q.at("options")) {
                question.options.push_back(
                    {parse_label(o.at("label").get<std::string>()), o.at("text").get<std::string>()});
            }
            c.questions.push_back(std::move(question));
        }
    } catch (const Json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed curriculum: ") + e.what());
    }

    const Track order[] = {Track::hate_speech, Track::counterspeech};
    if (c.sections.size() != 6) fail(ErrorCode::invalid_argument, "curriculum needs six sections");
    for (std::size_t i = 0; i < c.sections.size(); ++i) {
        const auto& s = c.sections[i];
        if (s.track != order[i / 3] || s.ordinal != static_cast<int>(i % 3) + 1) {
            fail(ErrorCode::invalid_argument,
                 "curriculum sections must be three per track in ordinal order");
        }
    }
    if (c.questions.size() != quiz_length) {
        fail(ErrorCode::invalid_argument, "curriculum needs four quiz questions");
    }
    for (std::size_t i = 0; i < c.questions.size(); ++i) {
        const auto& q = c.questions[i];
        if (q.ordinal != static_cast<int>(i) + 1 || q.options.size() != 4) {
            fail(ErrorCode::invalid_argument, "quiz question " + std::to_string(i + 1) + " is malformed");
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (q.options[k].label != static_cast<char>('A' + k)) {
                fail(ErrorCode::invalid_argument, "quiz options must be labelled A to D in order");
            }
        }
    }
    return c;
}

const Curriculum& get_curriculum() {
    static const Curriculum curriculum = parse_curriculum(Json::parse(data::curriculum_json));
    return curriculum;
}

Json to_json_value(const Curriculum& c) {
    Json sections = Json::array();
    for (const auto& s : c.sections) {
        sections.push_back({{"track", to_string(s.track)},
                            {"ordinal", s.ordinal},
                            {"title", s.title},
                            {"body", s.body}});
    }
    Json questions = Json::array();
    for (const auto& q : c.questions) {
        Json options = Json::array();
        for (const auto& o : q.options) {
            options.push_back({{"label", std::string(1, o.label)}, {"text", o.text}});
        }
        questions.push_back({{"ordinal", q.ordinal}, {"prompt", q.prompt}, {"options", options}});
    }
    return {{"version", c.version}, {"sections", sections}, {"questions", questions}};
}

std::array<char, quiz_length> parse_answers(const std::vector<std::string>& labels) {
    if (labels.size() != quiz_length) {
        fail(ErrorCode::invalid_argument, "expected exactly 4 quiz answers, got " +
                                              std::to_string(labels.size()));
    }
    std::array<char, quiz_length> out{};
    for (std::size_t i = 0; i < quiz_length; ++i) out[i] = parse_label(labels[i]);
    return out;
}

QuizResult grade_answers(const std::string& session_id,
                         const std::array<char, quiz_length>& answers) {
    QuizResult r;
    r.session_id = session_id;
    r.answers = answers;
    for (std::size_t i = 0; i < quiz_length; ++i) {
        parse_label(std::string_view(&answers[i], 1));
        r.correct[i] = answers[i] == answer_key[i];
        r.n_correct += r.correct[i] ? 1 : 0;
    }
    return r;
}

double accuracy_aggregate(const std::vector<int>& correct_counts) {
    if (correct_counts.empty()) {
        fail(ErrorCode::invalid_argument, "accuracy needs at least one quiz result");
    }
    long total = 0;
    for (int n : correct_counts) {
        if (n < 0 || n > static_cast<int>(quiz_length)) {
            fail(ErrorCode::invalid_argument, "quiz score out of range");
        }
        total += n;
    }
    return 100.0 * static_cast<double>(total) /
           static_cast<double>(quiz_length * correct_counts.size());
}

double accuracy_aggregate(const std::vector<QuizResult>& results) {
    std::vector<int> counts;
    counts.reserve(results.size());
    for (const auto& r : results) counts.push_back(r.n_correct);
    return accuracy_aggregate(counts);
}

Json to_json_value(const QuizResult& r) {
    Json answers = Json::array();
    for (char a : r.answers) answers.push_back(std::string(1, a));
    return {{"session_id", r.session_id},
            {"answers", answers},
            {"correct", r.correct},
            {"n_correct", r.n_correct}};
}

QuizResult quiz_result_from_json(const Json& j) {
    auto answers = parse_answers(j.at("answers").get<std::vector<std::string>>());
    return grade_answers(j.at("session_id").get<std::string>(), answers);
}

}  // namespace counterquill::learning
