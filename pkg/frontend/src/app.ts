// Browser entry point.  All SLA judgments shown here come straight from
// the API payloads; this file only routes views and moves data into the
// DOM.

import { ApiError, SlaClient } from './client.js';
import type { DetailedRowDto, MatrixDto, OverviewRowDto } from './types.js';
import {
  ALL_PRIORITIES,
  matrixToForm,
  renderDetailedTable,
  renderOverviewTable,
  rowFlag,
  validateMatrixForm,
  validateRequestForm,
  type MatrixFormState,
  type RequestFormState,
  type RowFilter,
  type ViewName,
} from './views.js';

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('api');
  if (fromQuery) {
    try {
      window.localStorage.setItem('slatrack.api', fromQuery);
    } catch {
      // storage may be disabled; the query param still wins for this load
    }
    return fromQuery;
  }
  try {
    const stored = window.localStorage.getItem('slatrack.api');
    if (stored) return stored;
  } catch {
    // fall through to the default
  }
  return 'http://127.0.0.1:8000';
}

const client = new SlaClient(apiBase());

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function todayIso(): string {
  return new Date().toISOString().slice(0, 10);
}

const state = {
  activeView: 'Home' as ViewName,
  asOf: todayIso(),
  filter: {} as RowFilter,
  lastDetailed: null as DetailedRowDto[] | null,
  lastOverview: null as OverviewRowDto[] | null,
  pollTimer: 0,
};

const VIEW_IDS: Record<ViewName, string> = {
  Home: 'view-home',
  PriorityMapping: 'view-mapping',
  EnterData: 'view-enter',
  Overview: 'view-overview',
  Detailed: 'view-detailed',
};

function showView(view: ViewName): void {
  state.activeView = view;
  for (const [name, id] of Object.entries(VIEW_IDS)) {
    el(id).hidden = name !== view;
  }
  hideBanner();
}

// -- error banner --------------------------------------------------------

function showBanner(message: string): void {
  const banner = el('banner');
  banner.textContent = message;
  banner.hidden = false;
}

function hideBanner(): void {
  el('banner').hidden = true;
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    const detail = err.details && err.details.length ? ` (${err.details.join('; ')})` : '';
    return `Server rejected the request: ${err.message}${detail}`;
  }
  if (err instanceof Error) return `Could not reach the API: ${err.message}`;
  return 'Could not reach the API.';
}

// -- report views --------------------------------------------------------

async function refreshDetailed(): Promise<void> {
  try {
    state.lastDetailed = await client.detailedReport(state.asOf);
    hideBanner();
  } catch (err) {
    // keep whatever was last rendered on screen
    showBanner(describeError(err));
  }
  if (state.lastDetailed !== null) {
    el('detailed-table').innerHTML = renderDetailedTable(state.lastDetailed, state.filter);
  }
}

async function refreshOverview(): Promise<void> {
  try {
    state.lastOverview = await client.overviewReport(state.asOf);
    hideBanner();
  } catch (err) {
    showBanner(describeError(err));
  }
  if (state.lastOverview !== null) {
    el('overview-table').innerHTML = renderOverviewTable(state.lastOverview);
  }
}

async function refreshActiveReport(): Promise<void> {
  if (state.activeView === 'Detailed') await refreshDetailed();
  if (state.activeView === 'Overview') await refreshOverview();
}

// -- priority mapping ----------------------------------------------------

function fillMappingForm(form: MatrixFormState): void {
  (el<HTMLSelectElement>('map-mode')).value = form.calendar_mode;
  for (const priority of ['Critical', 'High', 'Medium', 'Low']) {
    el<HTMLInputElement>(`map-amount-${priority}`).value = form.amounts[priority] ?? '';
    el<HTMLSelectElement>(`map-unit-${priority}`).value = form.units[priority] ?? 'days';
  }
}

function readMappingForm(): MatrixFormState {
  const amounts: Record<string, string> = {};
  const units: Record<string, string> = {};
  for (const priority of ['Critical', 'High', 'Medium', 'Low']) {
    amounts[priority] = el<HTMLInputElement>(`map-amount-${priority}`).value;
    units[priority] = el<HTMLSelectElement>(`map-unit-${priority}`).value;
  }
  return { calendar_mode: el<HTMLSelectElement>('map-mode').value, amounts, units };
}

function showMappingErrors(errors: Record<string, string>): void {
  for (const priority of ['Critical', 'High', 'Medium', 'Low']) {
    const slot = el(`map-error-${priority}`);
    slot.textContent = errors[priority] ?? '';
  }
  el('map-error-mode').textContent = errors['calendar_mode'] ?? '';
}

async function openMapping(): Promise<void> {
  showView('PriorityMapping');
  try {
    const matrix = await client.getMatrix();
    fillMappingForm(matrixToForm(matrix));
    showMappingErrors({});
  } catch (err) {
    showBanner(describeError(err));
  }
}

async function saveMapping(): Promise<void> {
  const form = readMappingForm();
  const errors = validateMatrixForm(form);
  showMappingErrors(errors);
  if (Object.keys(errors).length > 0) return; // invalid input never leaves the page
  const entries: MatrixDto['entries'] = {};
  for (const priority of ['Critical', 'High', 'Medium', 'Low']) {
    entries[priority] = {
      amount: Number(form.amounts[priority]),
      unit: form.units[priority] as 'days' | 'hours',
    };
  }
  const body: MatrixDto = { calendar_mode: form.calendar_mode as MatrixDto['calendar_mode'], entries };
  try {
    const saved = await client.putMatrix(body);
    fillMappingForm(matrixToForm(saved));
    el('map-saved').textContent = 'Saved.';
    window.setTimeout(() => {
      el('map-saved').textContent = '';
    }, 2500);
  } catch (err) {
    showBanner(describeError(err));
  }
}

// -- enter data ----------------------------------------------------------

function readRequestForm(): RequestFormState {
  return {
    creation: el<HTMLInputElement>('enter-creation').value,
    issue_type: el<HTMLInputElement>('enter-type').value,
    priority: el<HTMLSelectElement>('enter-priority').value,
    subject: el<HTMLInputElement>('enter-subject').value,
  };
}

function showRequestErrors(errors: Record<string, string>): void {
  for (const field of ['creation', 'issue_type', 'priority', 'subject']) {
    el(`enter-error-${field}`).textContent = errors[field] ?? '';
  }
}

async function submitRequest(): Promise<void> {
  const form = readRequestForm();
  const errors = validateRequestForm(form);
  showRequestErrors(errors);
  if (Object.keys(errors).length > 0) return;
  try {
    const created = await client.createRequest(form);
    el('enter-result').textContent = `Created ${created.issue_id}.`;
    el<HTMLInputElement>('enter-subject').value = '';
  } catch (err) {
    showBanner(describeError(err));
  }
}

// -- wiring --------------------------------------------------------------

function setupNav(): void {
  el('nav-mapping').addEventListener('click', () => void openMapping());
  el('nav-enter').addEventListener('click', () => {
    showView('EnterData');
    el<HTMLInputElement>('enter-creation').value = todayIso();
    showRequestErrors({});
    el('enter-result').textContent = '';
  });
  el('nav-overview').addEventListener('click', () => {
    showView('Overview');
    void refreshOverview();
  });
  el('nav-detailed').addEventListener('click', () => {
    showView('Detailed');
    void refreshDetailed();
  });
  for (const id of ['back-mapping', 'back-enter', 'back-overview', 'back-detailed']) {
    el(id).addEventListener('click', () => showView('Home'));
  }
}

function setupControls(): void {
  const asOf = el<HTMLInputElement>('as-of');
  asOf.value = state.asOf;
  asOf.addEventListener('change', () => {
    if (asOf.value) {
      state.asOf = asOf.value;
      void refreshActiveReport();
    }
  });
  el('refresh').addEventListener('click', () => void refreshActiveReport());
  const poll = el<HTMLInputElement>('poll');
  poll.addEventListener('change', () => {
    if (poll.checked) {
      state.pollTimer = window.setInterval(() => void refreshActiveReport(), 5000);
    } else {
      window.clearInterval(state.pollTimer);
    }
  });
  const filter = el<HTMLSelectElement>('filter-priority');
  for (const priority of ALL_PRIORITIES) {
    const option = document.createElement('option');
    option.value = priority;
    option.textContent = priority;
    filter.append(option);
  }
  filter.addEventListener('change', () => {
    state.filter = filter.value ? { priority: filter.value } : {};
    if (state.lastDetailed !== null) {
      el('detailed-table').innerHTML = renderDetailedTable(state.lastDetailed, state.filter);
    }
  });
  el('map-save').addEventListener('click', () => void saveMapping());
  el('enter-submit').addEventListener('click', () => void submitRequest());
}

export function start(): void {
  el('api-base').textContent = apiBase();
  setupNav();
  setupControls();
  showView('Home');
}

// rowFlag is re-exported so the page can be poked from the console while
// debugging against a live server.
export { rowFlag };

if (typeof document !== 'undefined' && document.getElementById('view-home')) {
  start();
}
