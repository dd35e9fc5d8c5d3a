// Small SVG glyphs: the nine spatial regions (each drawn from that
// region's own pitch markings), match events (metaphor shapes: arrow for
// a shot, cross for an interception, card for a foul), and the
// formation glyph (one bar per dash-separated line).

const SVG_NS = "http://www.w3.org/2000/svg";

function svg(width: number, height: number): SVGSVGElement {
  const el = document.createElementNS(SVG_NS, "svg");
  el.setAttribute("width", String(width));
  el.setAttribute("height", String(height));
  el.setAttribute("viewBox", `0 0 ${width} ${height}`);
  return el;
}

function shape(
  parent: SVGElement,
  tag: string,
  attrs: Record<string, string>,
): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  parent.appendChild(el);
  return el;
}

export const REGION_GLYPH_CODES = [
  "own-corner-near",
  "halfway-touch-near",
  "opp-corner-near",
  "own-box",
  "center-circle",
  "opp-box",
  "own-corner-far",
  "halfway-touch-far",
  "opp-corner-far",
] as const;

export type RegionGlyphCode = (typeof REGION_GLYPH_CODES)[number];

// 24 x 16 miniature pitch; the distinguishing marking is drawn per region.
export function regionGlyph(code: string): SVGSVGElement {
  const el = svg(24, 16);
  el.dataset.glyph = code;
  el.classList.add("region-glyph");
  shape(el, "rect", {
    x: "0.5",
    y: "0.5",
    width: "23",
    height: "15",
    class: "pitch-outline",
  });
  switch (code) {
    case "own-corner-near":
      shape(el, "path", { d: "M 0.5 11 A 5 5 0 0 1 5.5 15.5", class: "mark" });
      break;
    case "halfway-touch-near":
      shape(el, "line", { x1: "12", y1: "9", x2: "12", y2: "15.5", class: "mark" });
      shape(el, "circle", { cx: "12", cy: "15.5", r: "1.4", class: "mark" });
      break;
    case "opp-corner-near":
      shape(el, "path", { d: "M 23.5 11 A 5 5 0 0 0 18.5 15.5", class: "mark" });
      break;
    case "own-box":
      shape(el, "rect", { x: "0.5", y: "4", width: "6", height: "8", class: "mark" });
      break;
    case "center-circle":
      shape(el, "circle", { cx: "12", cy: "8", r: "4", class: "mark" });
      break;
    case "opp-box":
      shape(el, "rect", { x: "17.5", y: "4", width: "6", height: "8", class: "mark" });
      break;
    case "own-corner-far":
      shape(el, "path", { d: "M 0.5 5 A 5 5 0 0 0 5.5 0.5", class: "mark" });
      break;
    case "halfway-touch-far":
      shape(el, "line", { x1: "12", y1: "0.5", x2: "12", y2: "7", class: "mark" });
      shape(el, "circle", { cx: "12", cy: "0.5", r: "1.4", class: "mark" });
      break;
    case "opp-corner-far":
      shape(el, "path", { d: "M 23.5 5 A 5 5 0 0 1 18.5 0.5", class: "mark" });
      break;
    default:
      shape(el, "text", { x: "12", y: "11", "text-anchor": "middle" }).textContent =
        "?";
  }
  return el;
}

// 14 x 14 event glyphs keyed by event tag.
export function eventGlyph(tag: string): SVGSVGElement {
  const el = svg(14, 14);
  el.dataset.event = tag;
  el.classList.add("event-glyph");
  switch (tag) {
    case "shot":
      shape(el, "line", { x1: "2", y1: "12", x2: "11", y2: "3", class: "mark" });
      shape(el, "path", { d: "M 11 3 L 6.5 4 M 11 3 L 10 7.5", class: "mark" });
      break;
    case "goal":
      shape(el, "circle", { cx: "7", cy: "7", r: "5", class: "mark" });
      shape(el, "circle", { cx: "7", cy: "7", r: "2", class: "mark filled" });
      break;
    case "interception":
      shape(el, "path", { d: "M 3 3 L 11 11 M 11 3 L 3 11", class: "mark" });
      break;
    case "out-of-bounds":
      shape(el, "line", { x1: "10", y1: "2", x2: "10", y2: "12", class: "mark" });
      shape(el, "line", { x1: "3", y1: "7", x2: "9", y2: "7", class: "mark" });
      break;
    case "foul":
    case "card":
      shape(el, "rect", { x: "4", y: "2", width: "6", height: "10", class: "mark card" });
      break;
    case "corner":
      shape(el, "path", { d: "M 2 12 A 8 8 0 0 1 10 4", class: "mark" });
      shape(el, "line", { x1: "2", y1: "12", x2: "2", y2: "4", class: "mark" });
      break;
    case "offside":
      shape(el, "line", { x1: "7", y1: "2", x2: "7", y2: "12", class: "mark dashed" });
      break;
    case "substitution":
      shape(el, "path", { d: "M 3 5 H 11 L 8.5 2.5 M 11 9 H 3 L 5.5 11.5", class: "mark" });
      break;
    case "possession-gain":
      shape(el, "circle", { cx: "7", cy: "7", r: "3", class: "mark filled" });
      break;
    case "half-end":
      shape(el, "line", { x1: "4", y1: "2", x2: "4", y2: "12", class: "mark" });
      shape(el, "line", { x1: "10", y1: "2", x2: "10", y2: "12", class: "mark" });
      break;
    default:
      shape(el, "circle", { cx: "7", cy: "7", r: "4", class: "mark" });
  }
  const title = document.createElementNS(SVG_NS, "title");
  title.textContent = tag;
  el.appendChild(title);
  return el;
}

// One horizontal bar per formation line; the line containing the player
// of interest is highlighted (e.g. 4-4-2 -> three bars).
export function formationGlyph(
  lineCount: number,
  highlightedLine: number | null,
): SVGSVGElement {
  const height = 4 * Math.max(lineCount, 1) + 2;
  const el = svg(18, height);
  el.dataset.lines = String(lineCount);
  el.classList.add("formation-glyph");
  for (let line = 0; line < lineCount; line += 1) {
    // Line 0 is the back line; draw it at the bottom.
    const y = height - 4 * (line + 1);
    const bar = shape(el, "rect", {
      x: "1",
      y: String(y),
      width: "16",
      height: "2.5",
      class: "formation-line",
    });
    if (line === highlightedLine) bar.classList.add("highlight");
  }
  return el;
}
