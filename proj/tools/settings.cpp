#include "settings.hpp"

#include <fstream>
#include <functional>
#include <map>

#include <json.hpp>

namespace dicola::cli {

namespace {

using Json = nlohmann::json;
using Setter = std::function<void(const Json&, Settings&)>;

template <class T>
Setter field(T Settings::*member) {
    return [member](const Json& v, Settings& s) { s.*member = v.get<T>(); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"seed", field(&Settings::seed)},
        {"n", field(&Settings::n)},
        {"degree", field(&Settings::degree)},
        {"latents", field(&Settings::latents)},
        {"samples", field(&Settings::samples)},
        {"reps", field(&Settings::reps)},
        {"methods", field(&Settings::methods)},
        {"method", field(&Settings::method)},
        {"tester", field(&Settings::tester)},
        {"data", field(&Settings::data)},
        {"truth", field(&Settings::truth)},
        {"pag", field(&Settings::pag)},
        {"alpha", field(&Settings::alpha)},
        {"max_cond", [](const Json& v, Settings& s) { s.max_cond = v.is_null() ? -1 : v.get<int>(); }},
        {"timeout_factor", field(&Settings::timeout_factor)},
        {"workers", field(&Settings::workers)},
        {"dag", field(&Settings::dag)},
        {"latents_file", field(&Settings::latents_file)},
        {"suite", field(&Settings::suite)},
        {"n_max", field(&Settings::n_max)},
        {"trials", field(&Settings::trials)},
        {"out", field(&Settings::out)},
        {"csv", field(&Settings::csv)},
        {"json", field(&Settings::json)},
    };
    return table;
}

}  // namespace

void apply_config_file(const std::filesystem::path& path, Settings& s) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw UsageError("config file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        auto it = setters().find(key);
        if (it == setters().end()) throw UsageError("unknown config key: " + key);
        try {
            it->second(value, s);
        } catch (const Json::exception&) {
            throw UsageError("config key " + key + " has the wrong type");
        }
    }
}

}  // namespace dicola::cli
