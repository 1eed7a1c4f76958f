#pragma once

#include "sasaki/biharmonic.hpp"
#include "sasaki/flows.hpp"
#include "sasaki/interchange.hpp"

#include <map>
#include <string>
#include <vector>

namespace sasaki::app {

// Effective run settings: defaults, then a key=value file, then command-line overrides.
class Config {
public:
    Config();

    static const std::vector<std::string>& keys();
    void load_file(const std::string& path);
    void load_text(const std::string& text, const std::string& origin = "config");
    void set(const std::string& key, const std::string& value);

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    unsigned long long seed() const;

    BiharmonicOptions biharmonic() const;
    CurveEvalOptions curve_eval() const;
    ImmersionEvalOptions immersion_eval() const;

    Json to_json() const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace sasaki::app
