#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "socbec/error.hpp"
#include "socbec/scenarios.hpp"

namespace {

std::string read_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw socbec::ConfigError("cannot read config '" + path + "'", "--config");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

socbec::KeyValues parse_overrides(const std::vector<std::string>& sets) {
    socbec::KeyValues out;
    for (const auto& s : sets) out.push_back(socbec::parse_assignment(s));
    return out;
}

// "g1N=0,10,20" -> {"g1N", {"0", "10", "20"}}
std::pair<std::string, std::vector<std::string>> parse_vary(const std::string& text) {
    auto [key, values] = socbec::parse_assignment(text);
    std::vector<std::string> items;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    if (items.empty()) throw socbec::ConfigError("no values to vary", key);
    return {key, items};
}

std::string dir_component(const std::string& key, const std::string& value) {
    std::string out = key + "_" + value;
    for (char& ch : out) {
        if (ch == '/' || ch == '\\' || ch == ' ' || ch == '*') ch = '_';
    }
    return out;
}

int report(const socbec::RunOutcome& outcome) {
    if (!outcome.message.empty()) std::cerr << "socbec: " << outcome.message << '\n';
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-orbit coupled condensate simulator"};
    app.set_version_flag("--version", socbec::version_string());
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> sets;

    const std::vector<std::string> names{"ground", "expand", "trap", "drive"};
    std::vector<CLI::App*> runs;
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
        sub->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--set", sets, "override key=value (repeatable)");
        runs.push_back(sub);
    }

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    std::string sweep_scenario;
    std::vector<std::string> varies;
    unsigned jobs = 1;
    sweep_cmd->add_option("--scenario", sweep_scenario, "ground|expand|trap|drive");
    sweep_cmd->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--out", out_dir, "sweep root directory");
    sweep_cmd->add_option("--set", sets, "override key=value (repeatable)");
    sweep_cmd->add_option("--vary", varies, "key=v1,v2,... (repeatable; cartesian product)")->required();
    sweep_cmd->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    // Single runs leave a metadata.json behind even when the config is rejected.
    const auto fail = [&](int code, const std::string& message) {
        std::cerr << "socbec: " << message << '\n';
        if (!*sweep_cmd) {
            try {
                socbec::write_failure_metadata(out_dir, code, message);
            } catch (const std::exception&) {
            }
        }
        return code;
    };

    try {
        const std::string text = read_config(config_path);
        const socbec::KeyValues overrides = parse_overrides(sets);
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!*runs[i]) continue;
            socbec::KeyValues all = overrides;
            all.emplace_back("output_dir", out_dir);
            const auto config = socbec::parse_config(text, all, socbec::parse_scenario(names[i]));
            return report(socbec::run_scenario(config));
        }

        std::optional<socbec::Scenario> scenario;
        if (!sweep_scenario.empty()) scenario = socbec::parse_scenario(sweep_scenario);
        std::vector<std::pair<std::string, std::vector<std::string>>> axes;
        for (const auto& v : varies) axes.push_back(parse_vary(v));

        std::vector<socbec::RunConfig> configs;
        std::vector<std::size_t> index(axes.size(), 0);
        bool done = false;
        while (!done) {
            socbec::KeyValues all = overrides;
            std::string dir;
            for (std::size_t a = 0; a < axes.size(); ++a) {
                const auto& value = axes[a].second[index[a]];
                all.emplace_back(axes[a].first, value);
                dir += (dir.empty() ? "" : "__") + dir_component(axes[a].first, value);
            }
            all.emplace_back("output_dir", dir);
            configs.push_back(socbec::parse_config(text, all, scenario));
            done = true;
            for (std::size_t a = axes.size(); a-- > 0;) {
                if (++index[a] < axes[a].second.size()) {
                    done = false;
                    break;
                }
                index[a] = 0;
            }
        }
        const auto outcomes = socbec::sweep(configs, jobs, out_dir);
        int code = socbec::exit_ok;
        for (const auto& o : outcomes) {
            if (o.exit_code != socbec::exit_ok) {
                report(o);
                code = std::max(code, o.exit_code);
            }
        }
        return code;
    } catch (const socbec::ConfigError& e) {
        return fail(socbec::exit_config, e.what());
    } catch (const socbec::NumericalError& e) {
        return fail(socbec::exit_numerical, e.what());
    } catch (const std::exception& e) {
        return fail(socbec::exit_config, e.what());
    }
}
