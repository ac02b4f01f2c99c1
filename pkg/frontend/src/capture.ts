/**
 * In-browser page capture.
 *
 * Walks the rendered DOM and emits a schema-version-1 capture document:
 * per-element absolute XPath (same `/tag[i]` format the Python core
 * generates), attributes, bounding-box geometry in document coordinates,
 * visibility, and visible text. Pure content-script: reads the DOM, never
 * mutates it. `capturePageJson` returns the document as a string so any
 * driver (or a devtools copy-paste) can persist it.
 */

export const SCHEMA_VERSION = 1;

export const DEFAULT_CANDIDATE_TAGS = [
  'input', 'button', 'select', 'a', 'h1', 'h2', 'h3', 'h4', 'h5',
  'li', 'span', 'p', 'th', 'tr', 'td', 'label', 'svg',
];

const NON_TEXT_TAGS = new Set(['script', 'style', 'template', 'noscript']);

export interface CaptureOptions {
  /** Candidate tag set; defaults to the 17 non-container tags. */
  tags?: string[];
  /** Emit invisible elements too (with visible=false). Default false. */
  includeInvisible?: boolean;
  /** Capture URL override (defaults to document.location). */
  url?: string;
}

export interface CaptureGeometry {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface CaptureElement {
  absolute_xpath: string;
  tag: string;
  attributes: Record<string, string>;
  visible: boolean;
  visible_text: string;
  geometry?: CaptureGeometry;
}

export interface PageCapture {
  schema_version: number;
  url: string;
  captured_at: string;
  metadata: Record<string, unknown>;
  elements: CaptureElement[];
}

/** Absolute path with 1-based same-tag sibling indices, root to element. */
export function buildAbsoluteXPath(el: Element): string {
  const steps: string[] = [];
  let node: Element | null = el;
  while (node !== null) {
    const tag = node.localName.toLowerCase();
    let position = 1;
    let sibling = node.previousElementSibling;
    while (sibling !== null) {
      if (sibling.localName.toLowerCase() === tag) {
        position += 1;
      }
      sibling = sibling.previousElementSibling;
    }
    steps.unshift(`/${tag}[${position}]`);
    node = node.parentElement;
  }
  return steps.join('');
}

function collapseWhitespace(text: string): string {
  return text.split(/\s+/).filter((part) => part.length > 0).join(' ');
}

/** Subtree text in document order, skipping script/style/template/noscript. */
export function collectText(el: Element): string {
  const parts: string[] = [];
  const walk = (node: Node): void => {
    if (node.nodeType === 3 /* TEXT_NODE */) {
      parts.push(node.nodeValue ?? '');
      return;
    }
    if (node.nodeType === 1 /* ELEMENT_NODE */) {
      if (NON_TEXT_TAGS.has((node as Element).localName.toLowerCase())) {
        return;
      }
      for (const child of Array.from(node.childNodes)) {
        walk(child);
      }
    }
  };
  walk(el);
  return collapseWhitespace(parts.join(''));
}

/** First non-blank of subtree text, value attribute, placeholder attribute. */
export function visibleTextOf(el: Element): string {
  const sources = [
    collectText(el),
    el.getAttribute('value') ?? '',
    el.getAttribute('placeholder') ?? '',
  ];
  for (const source of sources) {
    const collapsed = collapseWhitespace(source);
    if (collapsed.length > 0) {
      return collapsed;
    }
  }
  return '';
}

function hiddenByStyle(el: Element): boolean {
  const view = el.ownerDocument.defaultView;
  if (view === null) {
    return false;
  }
  let node: Element | null = el;
  while (node !== null) {
    const style = view.getComputedStyle(node);
    if (style.display === 'none' || style.visibility === 'hidden') {
      return true;
    }
    node = node.parentElement;
  }
  return false;
}

/** Rendered box has positive area and no hidden style in the ancestor chain. */
export function isVisible(el: Element): boolean {
  const rect = el.getBoundingClientRect();
  if (rect.width <= 0 || rect.height <= 0) {
    return false;
  }
  return !hiddenByStyle(el);
}

function geometryOf(el: Element): CaptureGeometry {
  const rect = el.getBoundingClientRect();
  const view = el.ownerDocument.defaultView;
  // Document (not viewport) coordinates, so scroll position is irrelevant.
  const scrollX = view ? view.scrollX ?? 0 : 0;
  const scrollY = view ? view.scrollY ?? 0 : 0;
  return {
    x: rect.left + scrollX,
    y: rect.top + scrollY,
    width: rect.width,
    height: rect.height,
  };
}

function attributesOf(el: Element): Record<string, string> {
  const out: Record<string, string> = {};
  for (const name of el.getAttributeNames()) {
    const key = name.toLowerCase();
    if (!(key in out)) {
      out[key] = el.getAttribute(name) ?? '';
    }
  }
  return out;
}

export function collectCandidates(doc: Document, tags: string[]): Element[] {
  const wanted = new Set(tags.map((t) => t.toLowerCase()));
  const out: Element[] = [];
  const walk = (el: Element): void => {
    if (wanted.has(el.localName.toLowerCase())) {
      out.push(el);
    }
    for (const child of Array.from(el.children)) {
      walk(child);
    }
  };
  if (doc.documentElement !== null) {
    walk(doc.documentElement);
  }
  return out;
}

/**
 * Build the capture from an already-collected element list. Elements that
 * became detached since collection are skipped and counted in metadata.
 */
export function buildCapture(
  elements: Element[],
  options: CaptureOptions = {},
  doc?: Document,
): PageCapture {
  const includeInvisible = options.includeInvisible ?? false;
  const document_ = doc ?? (elements.length > 0 ? elements[0].ownerDocument : null);
  let skippedDetached = 0;
  const captured: CaptureElement[] = [];
  for (const el of elements) {
    if (!el.isConnected) {
      skippedDetached += 1;
      continue;
    }
    const visible = isVisible(el);
    if (!visible && !includeInvisible) {
      continue;
    }
    captured.push({
      absolute_xpath: buildAbsoluteXPath(el),
      tag: el.localName.toLowerCase(),
      attributes: attributesOf(el),
      visible,
      visible_text: visibleTextOf(el),
      geometry: geometryOf(el),
    });
  }
  return {
    schema_version: SCHEMA_VERSION,
    url: options.url ?? document_?.location?.href ?? '',
    captured_at: new Date().toISOString(),
    metadata: { skipped_detached: skippedDetached },
    elements: captured,
  };
}

/** Capture every candidate element of a fully loaded document. */
export function capturePage(options: CaptureOptions = {}, doc?: Document): PageCapture {
  const document_ = doc ?? document;
  const tags = options.tags ?? DEFAULT_CANDIDATE_TAGS;
  return buildCapture(collectCandidates(document_, tags), options, document_);
}

/** Capture as a serialized string, ready to persist. */
export function capturePageJson(options: CaptureOptions = {}, doc?: Document): string {
  return JSON.stringify(capturePage(options, doc), null, 2);
}
