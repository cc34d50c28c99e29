#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "maskbox/errors.hpp"
#include "maskbox/eval.hpp"
#include "maskbox/mask.hpp"
#include "maskbox/pipeline.hpp"
#include "maskbox/svg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace maskbox;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmptyMask = 3;
constexpr int kExitSequenceMismatch = 4;

struct ConfigFlags {
    std::string box_method = "ellipse";
    std::string angle_source = "ellipse";
    bool refine = false;
    double factor = 0.258;
    double refine_step = 1.0;
    double max_shrink = 0.5;
    bool freeze_alpha = false;
    bool circular_theta_override = false;
    int threshold = 127;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("--box-method", flags.box_method, "Box construction method")
        ->check(CLI::IsMember({"ellipse", "minrect", "minmax"}))
        ->capture_default_str();
    cmd->add_option("--angle-source", flags.angle_source, "Orientation source")
        ->check(CLI::IsMember({"ellipse", "minrect"}))
        ->capture_default_str();
    cmd->add_flag("--refine", flags.refine, "Shrink box edges with low mask coverage");
    cmd->add_option("--factor", flags.factor, "Coverage fraction an edge must exceed")
        ->capture_default_str();
    cmd->add_option("--refine-step", flags.refine_step, "Edge move increment in pixels")
        ->capture_default_str();
    cmd->add_option("--max-shrink", flags.max_shrink,
                    "Per-edge travel cap as a fraction of the original dimension")
        ->capture_default_str();
    cmd->add_flag("--freeze-alpha", flags.freeze_alpha,
                  "Measure edge length on the original box while refining");
    cmd->add_flag("--circular-theta-override", flags.circular_theta_override,
                  "Force a vertical angle for near-circular fits");
    cmd->add_option("--threshold", flags.threshold, "Foreground threshold for gray images")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
}

PipelineConfig to_pipeline_config(const ConfigFlags& flags) {
    PipelineConfig cfg;
    if (flags.box_method == "minrect") cfg.box_method = BoxMethod::minrect;
    else if (flags.box_method == "minmax") cfg.box_method = BoxMethod::minmax;
    else cfg.box_method = BoxMethod::ellipse_intersection;
    cfg.angle_source =
        flags.angle_source == "minrect" ? AngleSource::minrect : AngleSource::ellipse;
    cfg.refine = flags.refine;
    cfg.refine_cfg.factor = flags.factor;
    cfg.refine_cfg.step = flags.refine_step;
    cfg.refine_cfg.max_shrink_fraction = flags.max_shrink;
    cfg.refine_cfg.freeze_alpha = flags.freeze_alpha;
    cfg.circular_theta_override = flags.circular_theta_override;
    cfg.mask_threshold = flags.threshold;
    return cfg;
}

json config_json(const ConfigFlags& flags) {
    return json{{"box_method", flags.box_method},
                {"angle_source", flags.angle_source},
                {"refine", flags.refine},
                {"factor", flags.factor},
                {"refine_step", flags.refine_step},
                {"max_shrink", flags.max_shrink},
                {"freeze_alpha", flags.freeze_alpha},
                {"circular_theta_override", flags.circular_theta_override},
                {"threshold", flags.threshold}};
}

std::string format_octuple(const RotatedBox& polygon) {
    char buf[256];
    const auto& c = polygon.corners;
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f", c[0].x, c[0].y,
                  c[1].x, c[1].y, c[2].x, c[2].y, c[3].x, c[3].y);
    return buf;
}

RotatedBox parse_octuple(const std::string& text) {
    std::array<double, 8> vals{};
    std::stringstream ss(text);
    std::string token;
    int count = 0;
    while (std::getline(ss, token, ',')) {
        if (count >= 8) throw io_error("polygon needs exactly 8 values: '" + text + "'");
        try {
            vals[count] = std::stod(token);
        } catch (const std::exception&) {
            throw io_error("bad polygon value '" + token + "'");
        }
        ++count;
    }
    if (count != 8) throw io_error("polygon needs exactly 8 values: '" + text + "'");
    return {{Point2{vals[0], vals[1]}, Point2{vals[2], vals[3]}, Point2{vals[4], vals[5]},
             Point2{vals[6], vals[7]}}};
}

const char* fallback_name(Fallback f) {
    switch (f) {
        case Fallback::none: return "none";
        case Fallback::minmax: return "minmax";
        case Fallback::empty_mask: default: return "empty_mask";
    }
}

const char* status_name(FrameStatus s) {
    switch (s) {
        case FrameStatus::tracked: return "tracked";
        case FrameStatus::failure: return "failure";
        case FrameStatus::burn_in: return "burn_in";
        case FrameStatus::unlabeled: default: return "unlabeled";
    }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw io_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

bool wildcard_match(const std::string& pattern, const std::string& name) {
    std::size_t p = 0, n = 0, star = std::string::npos, star_n = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            star_n = n;
        } else if (star != std::string::npos) {
            p = star + 1;
            n = ++star_n;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

bool known_mask_extension(const fs::path& p) {
    const auto ext = p.extension().string();
    return ext == ".grid" || ext == ".pgm" || ext == ".png";
}

// Directory, literal file, or a glob on the filename component.
std::vector<fs::path> expand_mask_pattern(const std::string& pattern) {
    std::vector<fs::path> files;
    const fs::path p(pattern);
    if (fs::is_directory(p)) {
        for (const auto& entry : fs::directory_iterator(p)) {
            if (entry.is_regular_file() && known_mask_extension(entry.path())) {
                files.push_back(entry.path());
            }
        }
    } else if (fs::is_regular_file(p)) {
        files.push_back(p);
    } else {
        const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
        if (!fs::is_directory(dir)) throw io_error("no such directory: '" + dir.string() + "'");
        const std::string name_pattern = p.filename().string();
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() &&
                wildcard_match(name_pattern, entry.path().filename().string())) {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.string() < b.string(); });
    if (files.empty()) throw io_error("no mask files match '" + pattern + "'");
    return files;
}

json ellipse_json(const Ellipse& e) {
    return json{{"center", {e.center.x, e.center.y}},
                {"semi_major", e.semi_major},
                {"semi_minor", e.semi_minor},
                {"angle", e.angle}};
}

int run_fit(const std::string& mask_path, const ConfigFlags& flags, bool as_json,
            bool allow_empty, bool dump_conic) {
    BinaryMask mask = load_mask(mask_path, flags.threshold);
    if (mask.foreground_count() == 0 && !allow_empty) {
        std::cerr << "error: mask '" << mask_path << "' has no foreground"
                  << " (use --allow-empty to emit a sentinel box)\n";
        return kExitEmptyMask;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const BoxResult result = estimate_box(mask, to_pipeline_config(flags));
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (as_json) {
        json out{{"schema", 1},
                 {"polygon", json::parse("[" + format_octuple(result.polygon) + "]")},
                 {"fallback_applied", fallback_name(result.fallback_applied)},
                 {"angle_used", result.angle_used},
                 {"elapsed_ms", elapsed_ms},
                 {"ellipse", result.ellipse ? ellipse_json(*result.ellipse) : json(nullptr)}};
        if (dump_conic) {
            out["conic"] = result.conic ? json(result.conic->as_array()) : json(nullptr);
        }
        std::cout << out.dump() << "\n";
    } else {
        std::cout << format_octuple(result.polygon) << "\n";
        if (dump_conic) {
            std::cout << (result.conic ? json(result.conic->as_array()).dump() : "null") << "\n";
        }
    }
    return kExitOk;
}

int run_track(const std::string& mask_pattern, const std::string& gt_path,
              const std::string& output_dir, int burn_in, bool with_timing,
              const ConfigFlags& flags) {
    const auto files = expand_mask_pattern(mask_pattern);
    std::vector<BinaryMask> masks;
    masks.reserve(files.size());
    for (const auto& f : files) masks.push_back(load_mask(f, flags.threshold));

    std::optional<GroundTruthSequence> gt;
    if (!gt_path.empty()) {
        gt = load_ground_truth(gt_path);
        if (gt->frames.size() != masks.size()) {
            std::cerr << "error: " << masks.size() << " mask frames but " << gt->frames.size()
                      << " ground-truth lines\n";
            return kExitSequenceMismatch;
        }
    }

    const PipelineConfig cfg = to_pipeline_config(flags);
    std::vector<double> frame_ms;
    const auto results = track_sequence(masks, cfg, &frame_ms);

    fs::create_directories(output_dir);
    std::string polygons_text;
    for (const auto& r : results) polygons_text += format_octuple(r.polygon) + "\n";
    write_file_atomic(fs::path(output_dir) / "polygons.txt", polygons_text);

    if (!gt) return kExitOk;

    std::vector<RotatedBox> polygons;
    polygons.reserve(results.size());
    for (const auto& r : results) polygons.push_back(r.polygon);
    const TrackingReport report = supervised_run(polygons, *gt, SupervisedOptions{burn_in});

    json out;
    out["schema"] = 1;
    out["accuracy"] = report.accuracy;
    out["failures"] = report.failures;
    out["robustness_ratio"] = report.robustness_ratio;
    out["empty_success_set"] = report.empty_success_set;
    out["eao"] = nullptr;  // not computed by this tool; field kept for schema stability
    out["per_frame_overlap"] = report.per_frame_overlap();
    json statuses = json::array();
    for (const auto& f : report.frames) statuses.push_back(status_name(f.status));
    out["frame_status"] = statuses;
    out["reinit_frames"] = report.reinit_frames;
    out["skipped_frames"] = report.skipped_frames;
    out["frames"] = results.size();
    out["burn_in"] = burn_in;
    out["config"] = config_json(flags);
    // Wall-clock timing breaks byte-for-byte reproducibility, so it is opt-in.
    if (with_timing && !frame_ms.empty()) {
        out["mean_latency_ms"] =
            std::accumulate(frame_ms.begin(), frame_ms.end(), 0.0) / frame_ms.size();
    } else {
        out["mean_latency_ms"] = nullptr;
    }
    write_file_atomic(fs::path(output_dir) / "report.json", out.dump(2) + "\n");
    return kExitOk;
}

int run_render(const std::string& mask_path, const std::string& out_path,
               const std::vector<std::string>& predictions,
               const std::vector<std::string>& ground_truths,
               const std::vector<std::string>& baselines,
               const std::vector<std::string>& polygon_files, int threshold) {
    BinaryMask mask = load_mask(mask_path, threshold);

    std::vector<OverlayPolygon> overlays;
    for (const auto& s : predictions) {
        overlays.push_back({parse_octuple(s), OverlayRole::prediction});
    }
    for (const auto& s : ground_truths) {
        overlays.push_back({parse_octuple(s), OverlayRole::ground_truth});
    }
    for (const auto& s : baselines) overlays.push_back({parse_octuple(s), OverlayRole::baseline});
    for (const auto& file : polygon_files) {
        std::ifstream in(file);
        if (!in) throw io_error("cannot open '" + file + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            overlays.push_back({parse_octuple(line), OverlayRole::prediction});
        }
    }

    const std::string svg = render_overlay_svg(mask, overlays);
    write_file_atomic(out_path, svg);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotated bounding boxes from binary segmentation masks"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "Estimate one rotated box from a mask file");
    std::string fit_mask;
    ConfigFlags fit_flags;
    bool fit_json = false, fit_allow_empty = false, fit_dump_conic = false;
    fit->add_option("mask", fit_mask, "Mask file (.grid, .pgm, .png)")->required();
    add_config_flags(fit, fit_flags);
    fit->add_flag("--json", fit_json, "Structured JSON output");
    fit->add_flag("--allow-empty", fit_allow_empty, "Emit a sentinel box for empty masks");
    fit->add_flag("--dump-conic", fit_dump_conic, "Also print the normalized conic coefficients");

    // track
    auto* track = app.add_subcommand("track", "Run a mask sequence and report metrics");
    std::string track_masks, track_gt, track_out = ".";
    int track_burn_in = 5;
    bool track_timing = false;
    ConfigFlags track_flags;
    track->add_option("--masks", track_masks, "Mask directory or filename glob")->required();
    track->add_option("--ground-truth", track_gt, "Ground-truth polygon file (one octuple per line)");
    track->add_option("--output", track_out, "Output directory")->capture_default_str();
    track->add_option("--burn-in", track_burn_in, "Frames skipped after a tracking failure")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    track->add_flag("--timing", track_timing, "Include mean per-frame latency in report.json");
    add_config_flags(track, track_flags);

    // render
    auto* render = app.add_subcommand("render", "Write an SVG overlay of a mask and polygons");
    std::string render_mask, render_out;
    std::vector<std::string> render_pred, render_gt, render_base, render_files;
    int render_threshold = 127;
    render->add_option("mask", render_mask, "Mask file")->required();
    render->add_option("output", render_out, "Output SVG path")->required();
    render->add_option("--prediction", render_pred, "Prediction polygon octuple (repeatable)");
    render->add_option("--ground-truth", render_gt, "Ground-truth polygon octuple (repeatable)");
    render->add_option("--baseline", render_base, "Baseline polygon octuple (repeatable)");
    render->add_option("--polygons-file", render_files,
                       "File of octuple lines rendered as predictions (repeatable)");
    render->add_option("--threshold", render_threshold, "Foreground threshold for gray images")
        ->check(CLI::Range(0, 255));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (fit->parsed()) {
            return run_fit(fit_mask, fit_flags, fit_json, fit_allow_empty, fit_dump_conic);
        }
        if (track->parsed()) {
            return run_track(track_masks, track_gt, track_out, track_burn_in, track_timing,
                             track_flags);
        }
        if (render->parsed()) {
            return run_render(render_mask, render_out, render_pred, render_gt, render_base,
                              render_files, render_threshold);
        }
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
