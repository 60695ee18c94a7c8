// JSON shapes served by the tracking API.  The dashboard treats every
// field as opaque data; due dates and breach states are never derived
// client-side.

export type PriorityName = 'Critical' | 'High' | 'Medium' | 'Low' | 'Planned';
export type StatusName = 'Open' | 'Assigned' | 'WorkInProgress' | 'Completed';
export type BreachName =
  | 'OnTrack'
  | 'DueToday'
  | 'Breached'
  | 'CompletedOnTime'
  | 'CompletedLate'
  | 'Exempt';

export interface RequestDto {
  issue_id: string;
  creation: string;
  issue_type: string;
  priority: PriorityName;
  subject: string;
  status: StatusName;
  completion: string | null;
  assignee: string | null;
}

export interface DetailedRowDto extends RequestDto {
  due_date: string | null;
  due_in_days: number | null;
  breach: BreachName;
}

export interface OverviewRowDto {
  priority: PriorityName;
  all_open: number;
  per_issue_type: Record<string, number>;
  due_today: number;
  sla_missed: number;
}

export interface MatrixEntryDto {
  amount: number;
  unit: 'days' | 'hours';
}

export interface MatrixDto {
  calendar_mode: 'CalendarDays' | 'BusinessDays';
  entries: Record<string, MatrixEntryDto>;
}

export interface NewRequestBody {
  creation: string;
  issue_type: string;
  priority: string;
  subject: string;
  status?: string;
  assignee?: string | null;
}

export interface ErrorBody {
  status: number;
  code: string;
  message: string;
  details: string[] | null;
}
