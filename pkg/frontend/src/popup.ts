// Detail popup, the no-district notice, the error banner and the
// retryable toast. Popup content comes verbatim from the /api/query
// response; nothing is recomputed client-side.

import type { QueryMatch } from "./types.js";

export function hidePopup(container: HTMLElement): void {
  container.replaceChildren();
  container.classList.remove("visible");
}

export function showPopup(
  container: HTMLElement,
  match: QueryMatch,
  at: { x: number; y: number },
): void {
  container.replaceChildren();
  container.classList.add("visible");
  container.style.left = `${at.x}px`;
  container.style.top = `${at.y}px`;

  const title = document.createElement("div");
  title.className = "popup-title";
  title.textContent = `${match.district.name} (${match.district.id})`;
  container.appendChild(title);

  const area = document.createElement("div");
  area.className = "popup-area";
  area.textContent = `${match.district.area_km2.toFixed(1)} km²`;
  container.appendChild(area);

  if (match.records.length === 0) {
    const empty = document.createElement("div");
    empty.className = "popup-empty";
    empty.textContent = "no records for this layer";
    container.appendChild(empty);
    return;
  }

  const table = document.createElement("table");
  table.className = "popup-records";
  const head = document.createElement("tr");
  for (const column of ["commodity", "quantity", "unit", "year"]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const record of match.records) {
    const tr = document.createElement("tr");
    tr.className = "popup-record";
    for (const value of [record.commodity, String(record.quantity),
                         record.unit, String(record.year)]) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}

export function showNoDistrict(
  container: HTMLElement,
  at: { x: number; y: number },
): void {
  container.replaceChildren();
  container.classList.add("visible");
  container.style.left = `${at.x}px`;
  container.style.top = `${at.y}px`;
  const notice = document.createElement("div");
  notice.className = "popup-no-district";
  notice.textContent = "no district here";
  container.appendChild(notice);
}

export function showErrorBanner(banner: HTMLElement, message: string): void {
  banner.textContent = message;
  banner.classList.add("visible");
}

export function hideErrorBanner(banner: HTMLElement): void {
  banner.textContent = "";
  banner.classList.remove("visible");
}

export function showRetryToast(
  toast: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  toast.replaceChildren();
  toast.classList.add("visible");
  const text = document.createElement("span");
  text.textContent = message;
  const button = document.createElement("button");
  button.className = "toast-retry";
  button.textContent = "retry";
  button.addEventListener("click", () => {
    toast.classList.remove("visible");
    toast.replaceChildren();
    onRetry();
  });
  toast.append(text, button);
}
