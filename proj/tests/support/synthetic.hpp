#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "maskbox/geometry.hpp"
#include "maskbox/mask.hpp"
#include "maskbox/point.hpp"

namespace testsupport {

// Parametric ellipse samples: evenly spaced parameter values, optional phase.
std::vector<maskbox::Point2> sample_ellipse(const maskbox::Point2& center, double semi_major,
                                            double semi_minor, double angle, int count,
                                            double phase = 0.0);

// Solid rectangle raster: a cell is foreground iff its center lies inside the
// rectangle (center c, len_u along `angle`, len_v across).
maskbox::BinaryMask rasterize_rect(int width, int height, const maskbox::Point2& c, double len_u,
                                   double len_v, double angle);

// Mask from rows of '0'/'.' (background) and anything else (foreground).
maskbox::BinaryMask mask_from_rows(const std::vector<std::string>& rows);

std::string to_grid(const maskbox::BinaryMask& mask);

// Person-like blob: vertical torso, round head, thin outstretched arms.
maskbox::BinaryMask silhouette_fixture();

// Grows 1-3 px outward spikes at `fraction` of the boundary cells.
maskbox::BinaryMask add_boundary_spikes(const maskbox::BinaryMask& mask, double fraction,
                                        std::mt19937& rng);

// Connected random blob (union of disks along a random walk).
maskbox::BinaryMask random_blob(int width, int height, std::mt19937& rng);

// Unique fresh directory under the system temp dir.
std::filesystem::path make_temp_dir(const std::string& tag);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

void write_png_gray(const std::filesystem::path& path, int width, int height,
                    const std::vector<std::uint8_t>& gray);

}  // namespace testsupport
