/** Small DOM construction helpers; no framework, just typed elements. */

type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function errorList(messages: string[]): HTMLElement {
  const list = el("ul", { class: "errors", "data-role": "errors" });
  for (const message of messages) {
    list.append(el("li", {}, message));
  }
  return list;
}
