#include "condscan/report.hpp"

#include <cstdio>
#include <sstream>

namespace condscan {

ReportNode ReportNode::str(std::string v) {
    ReportNode n(Type::string);
    n.text_ = std::move(v);
    return n;
}

ReportNode ReportNode::num(double v) {
    ReportNode n(Type::number);
    n.number_ = v;
    return n;
}

ReportNode ReportNode::integer(std::int64_t v) {
    ReportNode n(Type::integer);
    n.int_ = v;
    return n;
}

ReportNode ReportNode::boolean(bool v) {
    ReportNode n(Type::boolean);
    n.bool_ = v;
    return n;
}

ReportNode& ReportNode::set(const std::string& key, ReportNode v) {
    fields_.emplace_back(key, std::move(v));
    return *this;
}

ReportNode& ReportNode::push(ReportNode v) {
    items_.push_back(std::move(v));
    return *this;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void text_node(std::ostringstream& os, const ReportNode& node, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (node.type()) {
        case ReportNode::Type::object:
            for (const auto& [key, value] : node.fields()) {
                if (value.type() == ReportNode::Type::object ||
                    value.type() == ReportNode::Type::array) {
                    os << pad << key << ":\n";
                    text_node(os, value, indent + 1);
                } else {
                    os << pad << key << ": ";
                    text_node(os, value, 0);
                    os << '\n';
                }
            }
            break;
        case ReportNode::Type::array: {
            std::size_t i = 0;
            for (const ReportNode& item : node.items()) {
                if (item.type() == ReportNode::Type::object ||
                    item.type() == ReportNode::Type::array) {
                    os << pad << "- [" << i << "]\n";
                    text_node(os, item, indent + 1);
                } else {
                    os << pad << "- ";
                    text_node(os, item, 0);
                    os << '\n';
                }
                ++i;
            }
            break;
        }
        case ReportNode::Type::string: os << node.text(); break;
        case ReportNode::Type::number: os << format_double(node.number()); break;
        case ReportNode::Type::integer: os << node.int_value(); break;
        case ReportNode::Type::boolean: os << (node.bool_value() ? "true" : "false"); break;
    }
}

void json_escape(std::ostringstream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            default: os << c;
        }
    }
    os << '"';
}

void json_node(std::ostringstream& os, const ReportNode& node, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad1(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (node.type()) {
        case ReportNode::Type::object: {
            if (node.fields().empty()) {
                os << "{}";
                break;
            }
            os << "{\n";
            for (std::size_t i = 0; i < node.fields().size(); ++i) {
                os << pad1;
                json_escape(os, node.fields()[i].first);
                os << ": ";
                json_node(os, node.fields()[i].second, indent + 1);
                if (i + 1 < node.fields().size()) os << ',';
                os << '\n';
            }
            os << pad << '}';
            break;
        }
        case ReportNode::Type::array: {
            if (node.items().empty()) {
                os << "[]";
                break;
            }
            os << "[\n";
            for (std::size_t i = 0; i < node.items().size(); ++i) {
                os << pad1;
                json_node(os, node.items()[i], indent + 1);
                if (i + 1 < node.items().size()) os << ',';
                os << '\n';
            }
            os << pad << ']';
            break;
        }
        case ReportNode::Type::string: json_escape(os, node.text()); break;
        case ReportNode::Type::number: os << format_double(node.number()); break;
        case ReportNode::Type::integer: os << node.int_value(); break;
        case ReportNode::Type::boolean: os << (node.bool_value() ? "true" : "false"); break;
    }
}

} // namespace

std::string emit_text(const ReportNode& root) {
    std::ostringstream os;
    text_node(os, root, 0);
    return os.str();
}

std::string emit_structured(const ReportNode& root) {
    std::ostringstream os;
    json_node(os, root, 0);
    os << '\n';
    return os.str();
}

} // namespace condscan
