// Pure view logic: filtering, validation, and HTML rendering.  Keeping
// this free of DOM and network access is what lets the test suite cover
// it without a browser.

import type {
  BreachName,
  DetailedRowDto,
  MatrixDto,
  OverviewRowDto,
} from './types.js';

export type ViewName = 'Home' | 'PriorityMapping' | 'EnterData' | 'Overview' | 'Detailed';

export interface RowFilter {
  priority?: string;
  status?: string;
  issue_type?: string;
}

export interface ViewState {
  asOf: string;
  activeView: ViewName;
  filter: RowFilter;
}

export const SLA_PRIORITIES = ['Critical', 'High', 'Medium', 'Low'] as const;
export const ALL_PRIORITIES = [...SLA_PRIORITIES, 'Planned'] as const;

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

export function isValidIsoDate(text: string): boolean {
  if (!ISO_DATE.test(text)) return false;
  const parsed = new Date(text + 'T00:00:00Z');
  return !Number.isNaN(parsed.getTime()) && parsed.toISOString().slice(0, 10) === text;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

// rowFlag maps the server's breach value to a row style; the value is
// echoed, never recomputed.
export function rowFlag(breach: BreachName): 'breached' | 'due-today' | 'none' {
  if (breach === 'Breached') return 'breached';
  if (breach === 'DueToday') return 'due-today';
  return 'none';
}

export function applyFilter(rows: DetailedRowDto[], filter: RowFilter): DetailedRowDto[] {
  return rows.filter((row) => {
    if (filter.priority && row.priority !== filter.priority) return false;
    if (filter.status && row.status !== filter.status) return false;
    if (filter.issue_type && row.issue_type !== filter.issue_type) return false;
    return true;
  });
}

export const DETAILED_COLUMNS = [
  'Issue ID',
  'Creation Date',
  'Issue Type',
  'Priority',
  'Subject',
  'Status',
  'Completion Date',
  'Due In? (Days)',
  'Due Date',
] as const;

const STATUS_LABELS: Record<string, string> = { WorkInProgress: 'Work In Progress' };

export function statusLabel(status: string): string {
  return STATUS_LABELS[status] ?? status;
}

export function renderDetailedTable(rows: DetailedRowDto[], filter: RowFilter = {}): string {
  const visible = applyFilter(rows, filter);
  if (visible.length === 0) {
    return '<p class="placeholder">No requests to show for this date and filter.</p>';
  }
  const head = DETAILED_COLUMNS.map((c) => `<th>${c}</th>`).join('');
  const body = visible
    .map((row) => {
      const flag = rowFlag(row.breach);
      const cls = flag === 'none' ? '' : ` class="flag-${flag}"`;
      const cells = [
        row.issue_id,
        row.creation,
        row.issue_type,
        row.priority,
        row.subject,
        statusLabel(row.status),
        row.completion ?? '',
        row.due_in_days === null ? '' : String(row.due_in_days),
        row.due_date ?? '',
      ];
      const tds = cells.map((c) => `<td>${escapeHtml(c)}</td>`).join('');
      return `<tr data-id="${escapeHtml(row.issue_id)}"${cls}>${tds}</tr>`;
    })
    .join('\n');
  return `<table class="report"><thead><tr>${head}</tr></thead><tbody>\n${body}\n</tbody></table>`;
}

export function overviewIssueTypes(rows: OverviewRowDto[]): string[] {
  const types = new Set<string>();
  for (const row of rows) {
    for (const name of Object.keys(row.per_issue_type)) types.add(name);
  }
  return [...types].sort();
}

export function renderOverviewTable(rows: OverviewRowDto[]): string {
  if (rows.length === 0) {
    return '<p class="placeholder">No report data.</p>';
  }
  const types = overviewIssueTypes(rows);
  const headers = ['Priority', 'All Open Requests', ...types, 'Requests Due for Today', 'SLA Missed?'];
  const head = headers.map((h) => `<th>${escapeHtml(h)}</th>`).join('');
  const body = rows
    .map((row) => {
      const cells = [
        row.priority,
        String(row.all_open),
        ...types.map((t) => String(row.per_issue_type[t] ?? 0)),
        String(row.due_today),
        String(row.sla_missed),
      ];
      const highlight = row.due_today > 0 ? ' class="flag-due-today"' : '';
      return `<tr${highlight}>${cells.map((c) => `<td>${escapeHtml(c)}</td>`).join('')}</tr>`;
    })
    .join('\n');
  return `<table class="report"><thead><tr>${head}</tr></thead><tbody>\n${body}\n</tbody></table>`;
}

// -- priority mapping form ----------------------------------------------

export interface MatrixFormState {
  calendar_mode: string;
  amounts: Record<string, string>;
  units: Record<string, string>;
}

export function matrixToForm(matrix: MatrixDto): MatrixFormState {
  const amounts: Record<string, string> = {};
  const units: Record<string, string> = {};
  for (const priority of SLA_PRIORITIES) {
    const entry = matrix.entries[priority];
    amounts[priority] = entry ? String(entry.amount) : '';
    units[priority] = entry ? entry.unit : 'days';
  }
  return { calendar_mode: matrix.calendar_mode, amounts, units };
}

export function validateMatrixForm(form: MatrixFormState): Record<string, string> {
  const errors: Record<string, string> = {};
  for (const priority of SLA_PRIORITIES) {
    const raw = (form.amounts[priority] ?? '').trim();
    const amount = Number(raw);
    if (raw === '' || !Number.isInteger(amount) || amount <= 0) {
      errors[priority] = 'must be a positive whole number';
    }
    const unit = form.units[priority];
    if (unit !== 'days' && unit !== 'hours') {
      errors[priority] = 'unit must be days or hours';
    }
  }
  if (form.calendar_mode !== 'CalendarDays' && form.calendar_mode !== 'BusinessDays') {
    errors['calendar_mode'] = 'pick a calendar mode';
  }
  return errors;
}

export function formToMatrix(form: MatrixFormState): MatrixDto {
  const entries: MatrixDto['entries'] = {};
  for (const priority of SLA_PRIORITIES) {
    entries[priority] = {
      amount: Number(form.amounts[priority]),
      unit: form.units[priority] as 'days' | 'hours',
    };
  }
  return { calendar_mode: form.calendar_mode as MatrixDto['calendar_mode'], entries };
}

// -- enter-data form -----------------------------------------------------

export interface RequestFormState {
  creation: string;
  issue_type: string;
  priority: string;
  subject: string;
}

export function validateRequestForm(form: RequestFormState): Record<string, string> {
  const errors: Record<string, string> = {};
  if (!form.issue_type.trim()) errors['issue_type'] = 'issue type is required';
  if (!form.subject.trim()) errors['subject'] = 'subject is required';
  if (!(ALL_PRIORITIES as readonly string[]).includes(form.priority)) {
    errors['priority'] = 'pick a priority';
  }
  if (!isValidIsoDate(form.creation)) {
    errors['creation'] = 'creation date must be YYYY-MM-DD';
  }
  return errors;
}
