#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qtkit {

// Ordered list of distinct variable names. Immutable; copies share storage.
// Adjoining a variable yields a new context of which the old one is a prefix,
// and binary polynomial operations auto-embed along prefix relations.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names);

    static VarContext xs(std::size_t n); // x1..xn
    static VarContext ys(std::size_t n); // y1..yn

    std::size_t size() const { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const { return *names_; }

    std::optional<std::size_t> index_of(std::string_view name) const;

    VarContext adjoined(const std::string& name) const;

    bool prefix_of(const VarContext& other) const;

    friend bool operator==(const VarContext& a, const VarContext& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }
    friend bool operator!=(const VarContext& a, const VarContext& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

} // namespace qtkit
