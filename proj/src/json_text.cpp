#include "chsh_atlas/json_text.hpp"

#include <cmath>
#include <cstdio>

namespace chsh {

std::string fmt_sig(double v, int sig) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", sig, v);
    return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_rec(const nlohmann::ordered_json& j, int indent, int sig, int depth, std::string& out) {
    auto newline = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<size_t>(indent) * d, ' ');
        }
    };
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                escape_string(it.key(), out);
                out += indent >= 0 ? ": " : ":";
                dump_rec(it.value(), indent, sig, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                dump_rec(v, indent, sig, depth + 1, out);
            }
            newline(depth);
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::string:
            escape_string(j.get_ref<const std::string&>(), out);
            return;
        case nlohmann::ordered_json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case nlohmann::ordered_json::value_t::number_integer:
            out += std::to_string(j.get<int64_t>());
            return;
        case nlohmann::ordered_json::value_t::number_unsigned:
            out += std::to_string(j.get<uint64_t>());
            return;
        case nlohmann::ordered_json::value_t::number_float:
            out += fmt_sig(j.get<double>(), sig);
            return;
        default:
            out += "null";
            return;
    }
}

}  // namespace

std::string dump_canonical(const nlohmann::ordered_json& j, int indent, int sig) {
    std::string out;
    dump_rec(j, indent, sig, 0, out);
    if (indent >= 0) out += '\n';
    return out;
}

}  // namespace chsh
