#include "counterquill/report.hpp"

#include <map>
#include <optional>

namespace counterquill::report {

namespace {

using ItemGetter = std::optional<int> (*)(const study::DatasetRow&, std::size_t);

std::optional<int> tlx_item(const study::DatasetRow& r, std::size_t i) { return r.tlx[i]; }
std::optional<int> custom_item(const study::DatasetRow& r, std::size_t i) { return r.custom[i]; }

struct Instrument {
    const char* title;
    const std::array<std::string_view, study::items_per_instrument>* names;
    ItemGetter get;
};

constexpr Instrument instruments[] = {
    {"NASA-TLX", &study::tlx_item_names, tlx_item},
    {"Custom questions", &study::custom_item_names, custom_item},
};

std::string platform_name(Condition c) { return c == Condition::baseline ? "Baseline" : "CounterQuill"; }

Section paired_section(const std::vector<study::DatasetRow>& rows, const Instrument& ins) {
    Section s{ins.title, {"Baseline", "CounterQuill"}, {}};
    std::map<std::string, const study::DatasetRow*> base, cq;
    for (const auto& r : rows) (r.condition == Condition::baseline ? base : cq)[r.participant_id] = &r;
    for (std::size_t i = 0; i < ins.names->size(); ++i) {
        std::vector<double> a, b;
        for (const auto& [pid, rb] : base) {
            auto it = cq.find(pid);
            if (it == cq.end()) continue;
            auto va = ins.get(*rb, i);
            auto vb = ins.get(*it->second, i);
            if (!va || !vb) continue;
            a.push_back(*va);
            b.push_back(*vb);
        }
        if (a.size() < 2) continue;
        s.reports.push_back(stats::paired_t(a, b, std::string((*ins.names)[i])));
    }
    return s;
}

Section welch_section(const std::vector<study::DatasetRow>& rows, const Instrument& ins,
                      Condition platform) {
    Section s{platform_name(platform) + ": " + ins.title, {"Used first", "Used second"}, {}};
    for (std::size_t i = 0; i < ins.names->size(); ++i) {
        std::vector<double> first, second;
        for (const auto& r : rows) {
            if (r.condition != platform) continue;
            auto v = ins.get(r, i);
            if (!v) continue;
            (r.condition_position == 1 ? first : second).push_back(*v);
        }
        if (first.size() < 2 || second.size() < 2) continue;
        s.reports.push_back(stats::welch_t(first, second, std::string((*ins.names)[i])));
    }
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::vector<Section> build(const std::vector<study::DatasetRow>& rows, stats::TestFamily family) {
    std::vector<Section> out;
    if (family == stats::TestFamily::paired) {
        for (const auto& ins : instruments) out.push_back(paired_section(rows, ins));
    } else {
        for (Condition platform : {Condition::counterquill, Condition::baseline}) {
            for (const auto& ins : instruments) out.push_back(welch_section(rows, ins, platform));
        }
    }
    return out;
}

std::string render(const std::vector<Section>& sections, stats::TableFormat format) {
    std::string out;
    if (format == stats::TableFormat::text) {
        for (std::size_t i = 0; i < sections.size(); ++i) {
            if (i) out += "\n";
            out += sections[i].title + "\n";
            out += stats::render_table(sections[i].reports, format, sections[i].labels);
        }
        return out;
    }
    bool header_done = false;
    for (const auto& s : sections) {
        const auto table = stats::render_table(s.reports, format, s.labels);
        std::size_t pos = 0;
        bool first_line = true;
        while (pos < table.size()) {
            auto nl = table.find('\n', pos);
            if (nl == std::string::npos) nl = table.size();
            const auto line = table.substr(pos, nl - pos);
            pos = nl + 1;
            if (first_line) {
                first_line = false;
                if (header_done) continue;
                header_done = true;
                out += "Section," + line + "\n";
                continue;
            }
            out += csv_field(s.title) + "," + line + "\n";
        }
    }
    return out;
}

}  // namespace counterquill::report
