#pragma once

// Report document tree and its two serializations. Both formats emit
// the same fields in the same order; floating-point values are printed
// with 12 significant digits so identical runs produce byte-identical
// files.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace condscan {

class ReportNode {
public:
    enum class Type { object, array, string, number, integer, boolean };

    static ReportNode object() { return ReportNode(Type::object); }
    static ReportNode array() { return ReportNode(Type::array); }
    static ReportNode str(std::string v);
    static ReportNode num(double v);
    static ReportNode integer(std::int64_t v);
    static ReportNode boolean(bool v);

    ReportNode& set(const std::string& key, ReportNode v); // object field, ordered
    ReportNode& push(ReportNode v);                        // array element

    Type type() const { return type_; }
    const std::vector<std::pair<std::string, ReportNode>>& fields() const { return fields_; }
    const std::vector<ReportNode>& items() const { return items_; }
    const std::string& text() const { return text_; }
    double number() const { return number_; }
    std::int64_t int_value() const { return int_; }
    bool bool_value() const { return bool_; }

private:
    explicit ReportNode(Type t) : type_(t) {}

    Type type_;
    std::vector<std::pair<std::string, ReportNode>> fields_;
    std::vector<ReportNode> items_;
    std::string text_;
    double number_ = 0.0;
    std::int64_t int_ = 0;
    bool bool_ = false;
};

/// %.12g, stable across runs.
std::string format_double(double v);

/// Indented "key: value" rendering.
std::string emit_text(const ReportNode& root);

/// JSON rendering with the same field order.
std::string emit_structured(const ReportNode& root);

} // namespace condscan
