"""Feature detector fixtures, the form decision table, and invariants."""

import itertools

import pytest

from nojs_lint.config import AnalyzerConfig
from nojs_lint.detectors import (
    FeatureKind,
    REASON_CODES,
    check_page_text,
    check_stylesheets,
    detect_disclosure_buttons,
    detect_empty_anchor_buttons,
    detect_forms,
    detect_images,
    detect_lone_controls,
    detect_mislinked_fragment_anchors,
    detect_protected_emails,
    detect_loader_overlays,
    run_detectors,
    synthesize_query,
)
from nojs_lint.dom import parse_document
from nojs_lint.reliance import (
    JsRelianceClass,
    KNOWN_TAGS,
    RelianceContext,
    element_js_reliance,
)
from nojs_lint.sections import classify_sections


def analyze(html, detector, cfg=None):
    doc = parse_document(html)
    labels = classify_sections(doc)
    return doc, detector(doc, labels, cfg) if cfg else detector(doc, labels)


def verdicts_of(html, detector, cfg=None):
    doc = parse_document(html)
    return detector(doc, classify_sections(doc), cfg)


class TestImages:
    def test_lazy_class_data_src_broken(self):
        (v,) = verdicts_of('<img class="lazyload" data-src="cat.jpg">', detect_images)
        assert v.broken and v.detail == "lazy_no_src"

    def test_native_lazy_with_real_src_working(self):
        (v,) = verdicts_of('<img src="cat.jpg" loading="lazy">', detect_images)
        assert not v.broken and v.detail == "native_lazy_disabled"

    def test_placeholder_with_noscript_fallback_working(self):
        html = (
            '<img data-src="x.jpg" src="data:image/gif;base64,R0lGOD">'
            "<noscript><img src='x.jpg'></noscript>"
        )
        first, fallback = verdicts_of(html, detect_images)
        assert not first.broken and first.detail == "noscript_fallback"
        assert not fallback.broken

    def test_small_image_not_reported(self):
        assert verdicts_of('<img src="a.jpg" width=50 height=50>', detect_images) == []

    def test_one_small_dimension_not_reported(self):
        assert verdicts_of('<img src="a.jpg" width=500 height=40>', detect_images) == []

    def test_plain_image_working(self):
        (v,) = verdicts_of('<img src="a.jpg">', detect_images)
        assert not v.broken and v.detail == "ok"

    def test_one_by_one_placeholder_with_lazy_source_broken_and_reported(self):
        html = '<img src="spacer.gif" width=1 height=1 data-src="real.jpg">'
        (v,) = verdicts_of(html, detect_images)
        assert v.broken and v.detail == "placeholder_src"

    def test_one_by_one_tracking_pixel_not_reported(self):
        assert verdicts_of('<img src="p.gif" width=1 height=1>', detect_images) == []

    def test_picture_gets_single_verdict(self):
        html = (
            "<picture><source data-srcset='a.webp'>"
            "<img class='lazy' data-src='a.jpg'></picture>"
        )
        (v,) = verdicts_of(html, detect_images)
        assert v.broken and v.detail == "lazy_no_src"

    def test_picture_with_real_sources_working(self):
        html = "<picture><source srcset='a.webp'><img src='a.jpg'></picture>"
        (v,) = verdicts_of(html, detect_images)
        assert not v.broken

    def test_custom_lazy_attr_via_config(self):
        cfg = AnalyzerConfig(lazy_attrs=("data-defer-src",))
        (v,) = verdicts_of('<img data-defer-src="x.jpg">', detect_images, cfg)
        assert v.broken
        # data-src is no longer recognized under the replaced list
        (v,) = verdicts_of('<img data-src="x.jpg">', detect_images, cfg)
        assert not v.broken

    def test_threshold_configurable(self):
        cfg = AnalyzerConfig(large_image_min_px=40)
        (v,) = verdicts_of('<img src="a.jpg" width=50 height=50>', detect_images, cfg)
        assert not v.broken


class TestForms:
    def test_valid_search_form_working_with_query(self):
        html = (
            '<form action="/search"><input type="search" name="q">'
            '<input type="checkbox" name="check">'
            '<button type="submit">Search</button></form>'
        )
        doc, verdicts = analyze(html, detect_forms)
        (v,) = verdicts
        assert not v.broken
        form = next(e for e in doc.elements if e.tag == "form")
        assert synthesize_query(form, doc) == "?q=test&check=on"

    def test_single_text_input_implicit_submission(self):
        (v,) = verdicts_of('<form><input type="text" name="q"></form>', detect_forms)
        assert not v.broken

    def test_two_text_inputs_no_submit_broken(self):
        html = '<form><input type="text" name="a"><input type="text" name="b"></form>'
        (v,) = verdicts_of(html, detect_forms)
        assert v.broken and v.detail == "no_submission"

    def test_unnamed_control_broken(self):
        html = '<form><input type="text"><button type="submit">go</button></form>'
        (v,) = verdicts_of(html, detect_forms)
        assert v.broken and v.detail == "unnamed_control"

    def test_unnamed_submit_button_is_fine(self):
        html = '<form><input type="text" name="q"><input type="submit"></form>'
        (v,) = verdicts_of(html, detect_forms)
        assert not v.broken

    def test_javascript_action_broken(self):
        html = '<form action="javascript:submitIt()"><input name="q" type="text"></form>'
        (v,) = verdicts_of(html, detect_forms)
        assert v.broken and v.detail == "js_action"

    def test_default_type_button_submits(self):
        html = (
            '<form><input type="text" name="a"><input type="text" name="b">'
            "<button>Go</button></form>"
        )
        (v,) = verdicts_of(html, detect_forms)
        assert not v.broken

    def test_form_attribute_association(self):
        html = (
            '<form id="f1"><input type="text" name="a"><input type="text" name="b">'
            '</form><button form="f1" type="submit">Go</button>'
        )
        (v,) = verdicts_of(html, detect_forms)
        assert not v.broken


class TestFormDecisionTable:
    """Exhaustive enumeration of forms with <= 3 controls drawn from
    {named, unnamed} x {text, checkbox, submit button, generic button},
    checked against an independently written implicit-submission oracle.
    """

    MARKUP = {
        "text": '<input type="text"{name}>',
        "checkbox": '<input type="checkbox"{name}>',
        "submit": '<button type="submit"{name}>go</button>',
        "generic": '<button type="button"{name}>go</button>',
    }

    @staticmethod
    def oracle(controls):
        """(kind, named) tuples -> broken? Straight from the stated rules."""
        value_carrying_unnamed = any(
            kind in ("text", "checkbox") and not named for kind, named in controls
        )
        has_submit = any(kind == "submit" for kind, _ in controls)
        single_line_texts = sum(1 for kind, _ in controls if kind == "text")
        implicit_ok = single_line_texts <= 1
        return value_carrying_unnamed or not (has_submit or implicit_ok)

    def test_every_combination(self):
        kinds = list(self.MARKUP)
        named_options = (True, False)
        combos = [(k, n) for k in kinds for n in named_options]
        total = 0
        for length in range(0, 4):
            for controls in itertools.product(combos, repeat=length):
                parts = []
                for index, (kind, named) in enumerate(controls):
                    name = f' name="c{index}"' if named else ""
                    parts.append(self.MARKUP[kind].format(name=name))
                html = "<form>" + "".join(parts) + "</form>"
                (v,) = verdicts_of(html, detect_forms)
                assert v.broken is self.oracle(controls), html
                total += 1
        assert total == sum(len(combos) ** k for k in range(0, 4))


class TestLoneControls:
    def test_button_outside_form_broken(self):
        (v,) = verdicts_of("<button>Go</button>", detect_lone_controls)
        assert v.broken and v.detail == "no_form_owner"

    def test_checkbox_outside_form_working(self):
        (v,) = verdicts_of('<input type="checkbox">', detect_lone_controls)
        assert not v.broken and v.detail == "stateful_control"

    def test_radio_outside_form_working(self):
        (v,) = verdicts_of('<input type="radio">', detect_lone_controls)
        assert not v.broken

    def test_form_attribute_resolves_ownership(self):
        html = '<input form="f1" type="text"><form id="f1"></form>'
        doc = parse_document(html)
        lone = detect_lone_controls(doc, classify_sections(doc))
        assert [v for v in lone if v.detail != "stateful_control"] == []

    def test_dangling_form_reference_is_lone(self):
        (v,) = verdicts_of('<input form="nope" type="text">', detect_lone_controls)
        assert v.broken

    def test_inline_handler_still_broken_with_reason(self):
        (v,) = verdicts_of('<button onclick="f()">x</button>', detect_lone_controls)
        assert v.broken and v.detail == "inline_handler"

    def test_select_and_textarea_lone(self):
        verdicts = verdicts_of("<select></select><textarea></textarea>", detect_lone_controls)
        assert len(verdicts) == 2 and all(v.broken for v in verdicts)

    def test_control_inside_form_not_lone(self):
        assert verdicts_of("<form><button>x</button></form>", detect_lone_controls) == []


class TestEmptyAnchorButtons:
    def test_javascript_void_broken(self):
        (v,) = verdicts_of('<a href="javascript:void(0)">menu</a>', detect_empty_anchor_buttons)
        assert v.broken and v.detail == "js_noop"

    @pytest.mark.parametrize(
        "href", ["javascript:;", "javascript:", "javascript: void(0);", "JavaScript:Void(0)"]
    )
    def test_noop_variants(self, href):
        (v,) = verdicts_of(f'<a href="{href}">x</a>', detect_empty_anchor_buttons)
        assert v.broken

    def test_real_javascript_url_not_flagged(self):
        assert verdicts_of('<a href="javascript:openMenu()">x</a>', detect_empty_anchor_buttons) == []

    def test_hash_top_working(self):
        (v,) = verdicts_of('<a href="#top">up</a>', detect_empty_anchor_buttons)
        assert not v.broken and v.detail == "go_to_top"

    def test_bare_hash_working_by_default(self):
        (v,) = verdicts_of('<a href="#">up</a>', detect_empty_anchor_buttons)
        assert not v.broken and v.detail == "go_to_top"

    def test_hash_broken_when_configured(self):
        cfg = AnalyzerConfig(hash_go_to_top=False)
        (v,) = verdicts_of('<a href="#">up</a>', detect_empty_anchor_buttons, cfg)
        assert v.broken and v.detail == "hash_button"

    def test_empty_href_broken(self):
        (v,) = verdicts_of('<a href="">x</a>', detect_empty_anchor_buttons)
        assert v.broken and v.detail == "empty_href"

    def test_no_attributes_broken(self):
        (v,) = verdicts_of("<a>click</a>", detect_empty_anchor_buttons)
        assert v.broken and v.detail == "no_href"

    def test_named_anchor_destination_not_flagged(self):
        assert verdicts_of('<a name="section2"></a>', detect_empty_anchor_buttons) == []

    def test_ordinary_link_not_flagged(self):
        assert verdicts_of('<a href="https://example.com">x</a>', detect_empty_anchor_buttons) == []


class TestMislinkedFragmentAnchors:
    def test_unresolved_fragment_broken(self):
        (v,) = verdicts_of('<a href="#sec2">x</a>', detect_mislinked_fragment_anchors)
        assert v.broken and v.detail == "unresolved_fragment"

    def test_resolved_fragment_ok(self):
        html = '<a href="#sec2">x</a><h2 id="sec2">t</h2>'
        assert verdicts_of(html, detect_mislinked_fragment_anchors) == []

    def test_anchor_name_destination_resolves(self):
        html = '<a href="#here">x</a><a name="here"></a>'
        assert verdicts_of(html, detect_mislinked_fragment_anchors) == []

    def test_cross_page_fragment_ignored(self):
        assert verdicts_of('<a href="/other#x">x</a>', detect_mislinked_fragment_anchors) == []

    def test_top_and_empty_fragments_ignored(self):
        html = '<a href="#top">a</a><a href="#">b</a>'
        assert verdicts_of(html, detect_mislinked_fragment_anchors) == []

    def test_multiple_broken_fragments(self):
        html = '<a href="#a">1</a><a href="#b">2</a><div id="a"></div>'
        verdicts = verdicts_of(html, detect_mislinked_fragment_anchors)
        assert len(verdicts) == 1 and verdicts[0].broken


class TestDisclosureButtons:
    def test_bootstrap_dropdown_broken(self):
        (v,) = verdicts_of(
            '<a class="dropdown-toggle" data-bs-toggle="dropdown">m</a>',
            detect_disclosure_buttons,
        )
        assert v.broken and v.detail == "script_toggle"

    def test_label_checkbox_css_pattern_working(self):
        html = (
            '<input type="checkbox" id="toggle">'
            '<label for="toggle" aria-expanded="false">More</label>'
        )
        (v,) = verdicts_of(html, detect_disclosure_buttons)
        assert not v.broken and v.detail == "css_toggle"

    def test_details_summary_working(self):
        (v,) = verdicts_of(
            "<details><summary>More</summary><p>body</p></details>",
            detect_disclosure_buttons,
        )
        assert not v.broken and v.detail == "native_details"

    def test_summary_outside_details_not_native(self):
        assert verdicts_of("<summary>dangling</summary>", detect_disclosure_buttons) == []

    def test_aria_expanded_div_broken(self):
        (v,) = verdicts_of('<div aria-expanded="false">hdr</div>', detect_disclosure_buttons)
        assert v.broken

    def test_aria_haspopup_broken(self):
        (v,) = verdicts_of('<button aria-haspopup="true">menu</button>', detect_disclosure_buttons)
        assert v.broken

    def test_label_for_text_input_not_a_toggle(self):
        html = '<input type="text" id="q"><label for="q" aria-controls="p">Q</label>'
        (v,) = verdicts_of(html, detect_disclosure_buttons)
        assert v.broken

    def test_plain_button_not_candidate(self):
        assert verdicts_of("<button>Plain</button>", detect_disclosure_buttons) == []

    def test_custom_class_via_config(self):
        cfg = AnalyzerConfig(disclosure_classes=("burger",))
        (v,) = verdicts_of('<a class="burger">m</a>', detect_disclosure_buttons, cfg)
        assert v.broken


class TestProtectedEmails:
    def test_placeholder_text_broken(self):
        (v,) = verdicts_of("<p>contact: [email protected]</p>", detect_protected_emails)
        assert v.broken and v.detail == "obfuscated_text"

    def test_cfemail_attribute_broken(self):
        (v,) = verdicts_of('<a data-cfemail="a1b2c3">mail</a>', detect_protected_emails)
        assert v.broken and v.detail == "cfemail_attr"

    def test_plain_mailto_not_flagged(self):
        assert verdicts_of('<a href="mailto:a@b.c">a@b.c</a>', detect_protected_emails) == []

    def test_script_text_not_scanned(self):
        html = "<script>var s = '[email protected]';</script>"
        assert verdicts_of(html, detect_protected_emails) == []

    def test_both_markers_two_nodes(self):
        html = '<a data-cfemail="ff">[email protected]</a>'
        verdicts = verdicts_of(html, detect_protected_emails)
        assert len(verdicts) == 2


class TestLoaderOverlays:
    def test_id_preloader_broken(self):
        (v,) = verdicts_of('<body><div id="preloader">spin</div><p>x</p></body>', detect_loader_overlays)
        assert v.broken and v.detail == "overlay_blocks"

    def test_hidden_overlay_working(self):
        (v,) = verdicts_of('<body><div class="preloader" hidden>s</div></body>', detect_loader_overlays)
        assert not v.broken and v.detail == "hidden_overlay"

    def test_class_substring_match(self):
        (v,) = verdicts_of('<body><div class="page-PreLoader spin">s</div></body>', detect_loader_overlays)
        assert v.broken

    def test_nested_preloader_not_flagged(self):
        html = '<body><div><div><div class="preloader">s</div></div></div></body>'
        assert verdicts_of(html, detect_loader_overlays) == []

    def test_display_none_style_working(self):
        (v,) = verdicts_of(
            '<body><div id="preloader" style="display:none">s</div></body>',
            detect_loader_overlays,
        )
        assert not v.broken

    def test_non_div_not_flagged(self):
        assert verdicts_of('<body><section id="preloader">s</section></body>', detect_loader_overlays) == []


class TestWholePageChecks:
    def test_empty_app_shell_broken(self):
        doc = parse_document('<body><div id="root"></div></body>')
        v = check_page_text(doc)
        assert v.broken and v.detail == "empty_text"

    def test_text_present_working(self):
        assert not check_page_text(parse_document("<body>hello</body>")).broken

    def test_script_only_text_broken(self):
        doc = parse_document("<body><script>paint()</script></body>")
        assert check_page_text(doc).broken

    def test_whitespace_only_broken(self):
        assert check_page_text(parse_document("<body> \n\t </body>")).broken

    def test_stylesheet_link_working(self):
        doc = parse_document('<link rel="stylesheet" href="a.css"><body>x</body>')
        assert not check_stylesheets(doc).broken

    def test_no_styles_broken(self):
        doc = parse_document("<body>x</body>")
        v = check_stylesheets(doc)
        assert v.broken and v.detail == "no_styles"

    def test_whitespace_style_element_broken(self):
        doc = parse_document("<style>  </style><body>x</body>")
        assert check_stylesheets(doc).broken

    def test_inline_style_element_working(self):
        doc = parse_document("<style>p{color:red}</style><body>x</body>")
        assert not check_stylesheets(doc).broken

    def test_empty_href_link_broken(self):
        doc = parse_document('<link rel="stylesheet" href="">')
        assert check_stylesheets(doc).broken

    def test_preload_link_not_a_stylesheet(self):
        doc = parse_document('<link rel="preload" href="a.css">')
        assert check_stylesheets(doc).broken


class TestElementJsReliance:
    def test_canvas_always_requires_js(self):
        assert element_js_reliance("canvas") is JsRelianceClass.R3

    def test_div_nonsemantic(self):
        assert element_js_reliance("div") is JsRelianceClass.R1_NONSEMANTIC

    def test_button_outside_form(self):
        assert element_js_reliance("button") is JsRelianceClass.R2_OUTSIDE_FORM

    def test_button_inside_form_r0_equivalent(self):
        ctx = RelianceContext(in_form=True)
        assert element_js_reliance("button", ctx) is JsRelianceClass.R0

    def test_unknown_tag_nonsemantic(self):
        assert element_js_reliance("x-custom-widget") is JsRelianceClass.R1_NONSEMANTIC

    def test_total_over_known_vocabulary(self):
        for tag in KNOWN_TAGS:
            for in_form in (False, True):
                result = element_js_reliance(tag, RelianceContext(in_form=in_form))
                assert isinstance(result, JsRelianceClass)

    @pytest.mark.parametrize(
        "tag, expected",
        [
            ("img", JsRelianceClass.R1),
            ("a", JsRelianceClass.R1_NONSEMANTIC),
            ("span", JsRelianceClass.R1_NONSEMANTIC),
            ("form", JsRelianceClass.R2),
            ("script", JsRelianceClass.R2),
            ("select", JsRelianceClass.R2_OUTSIDE_FORM),
            ("label", JsRelianceClass.R0),
            ("noscript", JsRelianceClass.R0),
            ("picture", JsRelianceClass.R0),
            ("svg", JsRelianceClass.R1),
        ],
    )
    def test_taxonomy_spot_checks(self, tag, expected):
        assert element_js_reliance(tag) is expected


COMPLEX_PAGE = b"""
<html><head><link rel="stylesheet" href="s.css"></head><body>
<div id="preloader">spin</div>
<header class="header">
  <a class="dropdown-toggle" data-bs-toggle="dropdown" href="#">Menu</a>
  <nav><a href="#missing">x</a></nav>
</header>
<main>
  <img class="lazyload" data-src="hero.jpg">
  <form action="/go"><input type="text"><button type="submit">s</button></form>
  <button onclick="f()">act</button>
  <p>contact [email protected]</p>
  <details><summary>More</summary>hidden text</details>
</main>
<footer class="footer"><a href="">broken</a></footer>
</body></html>
"""


class TestCrossDetectorInvariants:
    def test_reason_codes_closed_sets(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        for kind, verdicts in run_detectors(doc, labels).items():
            for v in verdicts:
                assert v.detail in REASON_CODES[kind], (kind, v.detail)

    def test_node_paths_resolve(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        for verdicts in run_detectors(doc, labels).values():
            for v in verdicts:
                assert doc.resolve_path(v.node_path) is not None

    def test_determinism(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        first = run_detectors(doc, labels)
        second = run_detectors(doc, labels)
        assert first == second

    def test_no_duplicate_verdict_per_node_and_kind(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        for kind, verdicts in run_detectors(doc, labels).items():
            paths = [v.node_path for v in verdicts]
            assert len(paths) == len(set(paths)), kind

    def test_whole_page_kinds_single_verdict(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        results = run_detectors(doc, labels)
        assert len(results[FeatureKind.PAGE_TEXT]) == 1
        assert len(results[FeatureKind.STYLESHEETS_LOADED]) == 1

    def test_section_attribution(self):
        doc = parse_document(COMPLEX_PAGE)
        labels = classify_sections(doc)
        results = run_detectors(doc, labels)
        dropdown = results[FeatureKind.DISCLOSURE_BUTTON][0]
        assert not dropdown.in_main
        image = results[FeatureKind.LARGE_IMAGE][0]
        assert image.in_main
