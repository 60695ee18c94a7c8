import { describe, expect, it } from 'vitest';

import { ApiError, SlaClient, type FetchLike } from '../src/client.js';

interface Call {
  url: string;
  init?: RequestInit;
}

// A canned-response fetch that records what the client sent.
function fakeFetch(status: number, body: unknown, calls: Call[]): FetchLike {
  return async (url, init) => {
    calls.push({ url: String(url), init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { 'content-type': 'application/json' },
    });
  };
}

describe('SlaClient', () => {
  it('builds report URLs with the as_of query encoded', async () => {
    const calls: Call[] = [];
    const client = new SlaClient('http://host:9/', fakeFetch(200, [], calls));
    await client.detailedReport('2014-05-10');
    expect(calls[0]?.url).toBe('http://host:9/reports/detailed?as_of=2014-05-10');
    await client.overviewReport('2014-05-10');
    expect(calls[1]?.url).toBe('http://host:9/reports/overview?as_of=2014-05-10');
  });

  it('POSTs new requests as JSON and returns the allocated row', async () => {
    const calls: Call[] = [];
    const created = { issue_id: 'R0007', status: 'Open' };
    const client = new SlaClient('http://host:9', fakeFetch(201, created, calls));
    const result = await client.createRequest({
      creation: '2014-05-05',
      issue_type: 'Incident',
      priority: 'Low',
      subject: 'printer jam',
    });
    expect(result.issue_id).toBe('R0007');
    const sent = calls[0];
    expect(sent?.url).toBe('http://host:9/requests');
    expect(sent?.init?.method).toBe('POST');
    expect(JSON.parse(String(sent?.init?.body))).toMatchObject({ subject: 'printer jam' });
  });

  it('PUTs the priority matrix', async () => {
    const calls: Call[] = [];
    const matrix = {
      calendar_mode: 'CalendarDays' as const,
      entries: { Critical: { amount: 4, unit: 'hours' as const } },
    };
    const client = new SlaClient('http://host:9', fakeFetch(200, matrix, calls));
    await client.putMatrix(matrix);
    expect(calls[0]?.init?.method).toBe('PUT');
    expect(calls[0]?.url).toBe('http://host:9/priority-matrix');
  });

  it('passes request list filters through the query string', async () => {
    const calls: Call[] = [];
    const client = new SlaClient('http://host:9', fakeFetch(200, [], calls));
    await client.listRequests({ priority: 'Low', status: 'Open' });
    const url = new URL(calls[0]?.url ?? '');
    expect(url.pathname).toBe('/requests');
    expect(url.searchParams.get('priority')).toBe('Low');
    expect(url.searchParams.get('status')).toBe('Open');
  });

  it('surfaces the server error envelope as ApiError', async () => {
    const envelope = {
      status: 422,
      code: 'validation_error',
      message: 'unknown priority: Urgent',
      details: ['priority'],
    };
    const client = new SlaClient('http://host:9', fakeFetch(422, envelope, []));
    const err = await client
      .createRequest({ creation: 'x', issue_type: 'x', priority: 'Urgent', subject: 'x' })
      .then(
        () => null,
        (e: unknown) => e,
      );
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.status).toBe(422);
    expect(apiErr.code).toBe('validation_error');
    expect(apiErr.message).toBe('unknown priority: Urgent');
    expect(apiErr.details).toEqual(['priority']);
  });

  it('copes with a non-JSON error body', async () => {
    const broken: FetchLike = async () => new Response('<html>boom</html>', { status: 502 });
    const client = new SlaClient('http://host:9', broken);
    const err = await client.getMatrix().then(
      () => null,
      (e: unknown) => e,
    );
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(502);
    expect((err as ApiError).code).toBe('unreadable_error');
  });
});
