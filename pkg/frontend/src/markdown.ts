/** Markdown + inline-math rendering for expert answers.
 *
 * Expert answers arrive as markdown with `$...$` math spans. This renders a
 * deliberately small subset to HTML with no raw markup left visible:
 * bold/italic/inline code, unordered lists, paragraphs, and a TeX subset
 * inside math spans (fractions, super/subscripts, common symbols).
 */

const TEX_SYMBOLS: Record<string, string> = {
  times: '×',
  div: '÷',
  cdot: '·',
  pm: '±',
  degree: '°',
  circ: '°',
  rightarrow: '→',
  to: '→',
  leftarrow: '←',
  le: '≤',
  leq: '≤',
  ge: '≥',
  geq: '≥',
  ne: '≠',
  neq: '≠',
  approx: '≈',
  infty: '∞',
  sqrt: '√',
  Delta: 'Δ',
  alpha: 'α',
  beta: 'β',
  gamma: 'γ',
  delta: 'δ',
  theta: 'θ',
  lambda: 'λ',
  mu: 'μ',
  pi: 'π',
  rho: 'ρ',
  sigma: 'σ',
  omega: 'ω',
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Render one TeX-ish math span (without the dollar delimiters). */
export function renderMath(tex: string): string {
  let out = escapeHtml(tex);
  // \frac{a}{b} -> a/b as a styled fraction.
  out = out.replace(
    /\\frac\{([^{}]*)\}\{([^{}]*)\}/g,
    '<span class="frac"><sup>$1</sup>&frasl;<sub>$2</sub></span>',
  );
  out = out.replace(/\^\{([^{}]*)\}/g, '<sup>$1</sup>');
  out = out.replace(/\^([A-Za-z0-9+-])/g, '<sup>$1</sup>');
  out = out.replace(/_\{([^{}]*)\}/g, '<sub>$1</sub>');
  out = out.replace(/_([A-Za-z0-9+-])/g, '<sub>$1</sub>');
  out = out.replace(/\\([A-Za-z]+)/g, (match, name: string) => TEX_SYMBOLS[name] ?? name);
  out = out.replace(/[{}]/g, '');
  return `<span class="math">${out}</span>`;
}

function renderInline(text: string): string {
  let out = escapeHtml(text);
  out = out.replace(/`([^`]+)`/g, '<code>$1</code>');
  out = out.replace(/\*\*([^*]+)\*\*/g, '<strong>$1</strong>');
  out = out.replace(/\*([^*]+)\*/g, '<em>$1</em>');
  return out;
}

/** Split on $...$ spans so markdown rules never touch math content. */
function renderSpans(line: string): string {
  const parts: string[] = [];
  let rest = line;
  while (true) {
    const match = /\$([^$]+)\$/.exec(rest);
    if (!match) {
      parts.push(renderInline(rest));
      break;
    }
    parts.push(renderInline(rest.slice(0, match.index)));
    parts.push(renderMath(match[1]));
    rest = rest.slice(match.index + match[0].length);
  }
  return parts.join('');
}

export function renderMarkdown(text: string): string {
  if (!text) return '';
  const blocks: string[] = [];
  let listItems: string[] = [];

  const flushList = () => {
    if (listItems.length) {
      blocks.push(`<ul>${listItems.map((item) => `<li>${item}</li>`).join('')}</ul>`);
      listItems = [];
    }
  };

  for (const rawLine of text.split('\n')) {
    const line = rawLine.trim();
    if (!line) {
      flushList();
      continue;
    }
    const bullet = /^[-*]\s+(.*)$/.exec(line);
    if (bullet) {
      listItems.push(renderSpans(bullet[1]));
    } else {
      flushList();
      blocks.push(`<p>${renderSpans(line)}</p>`);
    }
  }
  flushList();
  return blocks.join('');
}
