// Thin typed client for the service wire API.

export interface ApiError {
  error_code: string;
  message: string;
}

export interface LoginChallenge {
  condition: 'password' | 'cueblot';
  cue_image_url?: string;
}

export type AttemptResult =
  | { kind: 'outcome'; outcome: 'success' | 'failure' }
  | { kind: 'locked_out'; message: string };

async function postJson(path: string, body: unknown): Promise<Response> {
  return fetch(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
}

export async function registerStart(username: string): Promise<string> {
  const resp = await postJson('/api/register/start', { username });
  const data = await resp.json();
  if (!resp.ok) throw data as ApiError;
  return data.code as string;
}

export async function registerComplete(
  code: string,
  secret: string,
  condition: 'password' | 'cueblot',
  cueParams?: string,
): Promise<void> {
  const body: Record<string, string> = { code, secret, condition };
  if (cueParams !== undefined) body.cue_params = cueParams;
  const resp = await postJson('/api/register/complete', body);
  if (!resp.ok) throw (await resp.json()) as ApiError;
}

export async function loginStart(username: string): Promise<LoginChallenge> {
  const resp = await postJson('/api/login/start', { username });
  const data = await resp.json();
  if (!resp.ok) throw data as ApiError;
  return data as LoginChallenge;
}

export async function loginAttempt(username: string, secret: string): Promise<AttemptResult> {
  const resp = await postJson('/api/login/attempt', { username, secret });
  const data = await resp.json();
  if (resp.status === 423) {
    return { kind: 'locked_out', message: (data as ApiError).message };
  }
  if (!resp.ok) throw data as ApiError;
  return { kind: 'outcome', outcome: data.outcome };
}
