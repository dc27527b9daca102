#pragma once

#include <json.hpp>

#include "styleseg/augment.hpp"
#include "styleseg/scm.hpp"

// nlohmann ADL converters for the domain types that cross the file boundary.
// Plain nlohmann::json keeps object keys sorted, which the byte-identical
// regeneration guarantees rely on.

namespace styleseg {

using json = nlohmann::json;

inline void to_json(json& j, const Interval& iv) { j = json{{"lo", iv.lo}, {"hi", iv.hi}}; }
inline void from_json(const json& j, Interval& iv) {
    j.at("lo").get_to(iv.lo);
    j.at("hi").get_to(iv.hi);
}

inline void to_json(json& j, const ShapeSpec& s) {
    j = json{{"class_id", s.class_id},
             {"center", {s.center[0], s.center[1]}},
             {"radii", {s.radii[0], s.radii[1]}},
             {"rotation", s.rotation},
             {"wobble", s.wobble}};
}
inline void from_json(const json& j, ShapeSpec& s) {
    j.at("class_id").get_to(s.class_id);
    s.center[0] = j.at("center")[0].get<double>();
    s.center[1] = j.at("center")[1].get<double>();
    s.radii[0] = j.at("radii")[0].get<double>();
    s.radii[1] = j.at("radii")[1].get<double>();
    j.at("rotation").get_to(s.rotation);
    j.at("wobble").get_to(s.wobble);
}

inline void to_json(json& j, const ContentLatent& c) {
    j = json{{"shapes", c.shapes}, {"volume_phase", c.volume_phase}};
}
inline void from_json(const json& j, ContentLatent& c) {
    j.at("shapes").get_to(c.shapes);
    j.at("volume_phase").get_to(c.volume_phase);
}

inline void to_json(json& j, const StyleLatent& s) {
    j = json{{"intensity", s.intensity}, {"gamma", s.gamma},
             {"blur_sigma", s.blur_sigma}, {"noise_std", s.noise_std},
             {"edge_gain", s.edge_gain}, {"texture_seed", s.texture_seed},
             {"invert", s.invert}};
}
inline void from_json(const json& j, StyleLatent& s) {
    j.at("intensity").get_to(s.intensity);
    j.at("gamma").get_to(s.gamma);
    j.at("blur_sigma").get_to(s.blur_sigma);
    j.at("noise_std").get_to(s.noise_std);
    j.at("edge_gain").get_to(s.edge_gain);
    j.at("texture_seed").get_to(s.texture_seed);
    j.at("invert").get_to(s.invert);
}

inline void to_json(json& j, const DomainSpec& d) {
    j = json{{"name", d.name},
             {"intensity", d.intensity},
             {"gamma", d.gamma},
             {"blur_sigma", d.blur_sigma},
             {"noise_std", d.noise_std},
             {"edge_gain", d.edge_gain},
             {"invert_prob", d.invert_prob},
             {"content_coupling", d.content_coupling}};
}
inline void from_json(const json& j, DomainSpec& d) {
    j.at("name").get_to(d.name);
    j.at("intensity").get_to(d.intensity);
    j.at("gamma").get_to(d.gamma);
    j.at("blur_sigma").get_to(d.blur_sigma);
    j.at("noise_std").get_to(d.noise_std);
    j.at("edge_gain").get_to(d.edge_gain);
    j.at("invert_prob").get_to(d.invert_prob);
    j.at("content_coupling").get_to(d.content_coupling);
}

inline void to_json(json& j, const ShapeRanges& r) {
    j = json{{"center_x", r.center_x}, {"center_y", r.center_y},
             {"radius_a", r.radius_a}, {"radius_b", r.radius_b},
             {"rotation", r.rotation}, {"wobble_amp", r.wobble_amp}};
}
inline void from_json(const json& j, ShapeRanges& r) {
    j.at("center_x").get_to(r.center_x);
    j.at("center_y").get_to(r.center_y);
    j.at("radius_a").get_to(r.radius_a);
    j.at("radius_b").get_to(r.radius_b);
    j.at("rotation").get_to(r.rotation);
    j.at("wobble_amp").get_to(r.wobble_amp);
}

inline void to_json(json& j, const SceneConfig& c) {
    j = json{{"num_classes", c.num_classes},
             {"wobble_terms", c.wobble_terms},
             {"phase_center_amp", c.phase_center_amp},
             {"phase_radius_amp", c.phase_radius_amp},
             {"per_class", c.per_class}};
}
inline void from_json(const json& j, SceneConfig& c) {
    j.at("num_classes").get_to(c.num_classes);
    j.at("wobble_terms").get_to(c.wobble_terms);
    j.at("phase_center_amp").get_to(c.phase_center_amp);
    j.at("phase_radius_amp").get_to(c.phase_radius_amp);
    j.at("per_class").get_to(c.per_class);
}

inline void to_json(json& j, const AugmentConfig& a) {
    j = json{{"p_affine", a.p_affine}, {"rotate_deg", a.rotate_deg}, {"scale", a.scale},
             {"max_shift", a.max_shift}, {"p_elastic", a.p_elastic},
             {"elastic_alpha", a.elastic_alpha}, {"elastic_sigma", a.elastic_sigma},
             {"p_brightness", a.p_brightness}, {"brightness_delta", a.brightness_delta},
             {"p_contrast", a.p_contrast}, {"contrast", a.contrast},
             {"p_gamma", a.p_gamma}, {"gamma", a.gamma},
             {"p_noise", a.p_noise}, {"noise_std", a.noise_std}};
}
inline void from_json(const json& j, AugmentConfig& a) {
    j.at("p_affine").get_to(a.p_affine);
    j.at("rotate_deg").get_to(a.rotate_deg);
    j.at("scale").get_to(a.scale);
    j.at("max_shift").get_to(a.max_shift);
    j.at("p_elastic").get_to(a.p_elastic);
    j.at("elastic_alpha").get_to(a.elastic_alpha);
    j.at("elastic_sigma").get_to(a.elastic_sigma);
    j.at("p_brightness").get_to(a.p_brightness);
    j.at("brightness_delta").get_to(a.brightness_delta);
    j.at("p_contrast").get_to(a.p_contrast);
    j.at("contrast").get_to(a.contrast);
    j.at("p_gamma").get_to(a.p_gamma);
    j.at("gamma").get_to(a.gamma);
    j.at("p_noise").get_to(a.p_noise);
    j.at("noise_std").get_to(a.noise_std);
}

}  // namespace styleseg
