#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sketchmatch/commands.hpp"

using namespace sketchmatch;

int main(int argc, char** argv) {
    CLI::App app{"Geometric face-sketch matcher: extracts facial components from\n"
                 "frontal portraits and retrieves photos for a probe sketch."};
    app.require_subcommand(1);

    std::string config_path;
    std::string modality_str;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--modality", modality_str, "treat inputs as photo or sketch")
        ->check(CLI::IsMember({"photo", "sketch"}));

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "locate components in one portrait");
    extract->add_option("image", extract_args.image, "input image (PGM/PPM)")->required();
    extract->add_option("--out", extract_args.out_dir, "output directory for crops");
    extract->add_flag("--mask", extract_args.dump_mask, "also write the face mask");

    EnrollArgs enroll_args;
    auto* enroll = app.add_subcommand("enroll", "build a gallery from a photo directory");
    enroll->add_option("photos", enroll_args.photo_dir, "directory of gallery photos")
        ->required();
    enroll->add_option("gallery", enroll_args.gallery, "gallery file to write")->required();

    QueryArgs query_args;
    auto* query = app.add_subcommand("query", "rank gallery photos for a probe sketch");
    query->add_option("sketch", query_args.sketch, "probe sketch image")->required();
    query->add_option("gallery", query_args.gallery, "gallery file")->required();
    query->add_option("--k", query_args.k, "matches to return")->check(CLI::PositiveNumber);

    EvaluateArgs eval_args;
    auto* evaluate =
        app.add_subcommand("evaluate", "score extraction and recognition on a manifest");
    evaluate->add_option("manifest", eval_args.manifest,
                         "tab-separated identity/photo/sketch manifest")
        ->required();
    evaluate->add_option("--k", eval_args.k, "ranks in the match curve")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    Config cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!modality_str.empty()) {
            const Modality m = parse_modality(modality_str);
            cfg.default_modality = m;
            extract_args.modality = m;
            query_args.modality = m;
        }
    } catch (const Error& e) {
        std::cerr << "config: " << e.what() << "\n";
        return exit_code_for(e);
    }

    try {
        if (extract->parsed()) return run_extract(extract_args, cfg, std::cout, std::cerr);
        if (enroll->parsed()) return run_enroll(enroll_args, cfg, std::cout, std::cerr);
        if (query->parsed()) return run_query(query_args, cfg, std::cout, std::cerr);
        return run_evaluate(eval_args, cfg, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitPipeline;
    }
}
