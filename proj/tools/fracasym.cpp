#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "fracasym/cli.hpp"
#include "fracasym/error.hpp"
#include "fracasym/radial.hpp"

using namespace fracasym;

int main(int argc, char** argv) {
    CLI::App app{"fracasym: large-time asymptotics of the fractional heat equation with forcing"};
    app.require_subcommand(1);
    std::string config_path, out_dir = ".", cache_dir;
    int threads = 0;
    for (const char* name : {"kernel", "potential", "solve", "rates", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "INI configuration file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--cache", cache_dir, "kernel cache directory (default: $FRACASYM_CACHE)");
        sub->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "code=usage " << e.what() << "\n";
        return 2;
    }

    try {
        std::string text;
        try {
            text = read_file(config_path);
        } catch (const Error& e) {
            fail("config", e.what());
        }
        RunConfig cfg = parse_config(text);
        cfg.command = parse_command(app.get_subcommands().front()->get_name());
        cfg.out_dir = out_dir;
        cfg.threads = threads;
        cfg.cache_dir = cache_dir;
        const RunResult r = run_command(cfg);
        for (const auto& f : r.files) std::cout << f << "\n";
        if (r.status != 0) std::cerr << "code=check-failed " << to_string(cfg.command) << " check failed\n";
        return r.status;
    } catch (const Error& e) {
        std::cerr << "code=" << e.code() << " " << e.what() << "\n";
        return exit_status_for(e);
    } catch (const std::exception& e) {
        std::cerr << "code=internal " << e.what() << "\n";
        return 1;
    }
}
