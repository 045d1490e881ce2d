// Login flow: for cueblot users the cue image renders above the masked
// description field. Lockout responses disable the form with a countdown.
// Whether the username exists is never revealed.

import { loginAttempt, loginStart } from './api.js';

export interface LoginHooks {
  onAuthenticated: (username: string) => void;
}

export class LoginScreen {
  readonly root: HTMLElement;
  private username = '';
  private countdownTimer: ReturnType<typeof setInterval> | null = null;

  constructor(private hooks: LoginHooks, doc: Document = document) {
    this.root = doc.createElement('section');
    this.root.className = 'login';
    this.root.innerHTML = `
      <h2>Sign in</h2>
      <form class="who">
        <label>Username <input type="text" name="username" autocomplete="username"></label>
        <button type="submit">Continue</button>
      </form>
      <form class="secret" hidden>
        <img class="cue" alt="your cueblot" hidden>
        <label>Description <input type="password" name="secret" autocomplete="current-password"></label>
        <button type="submit">Sign in</button>
      </form>
      <p class="status" role="status"></p>`;

    (this.root.querySelector('form.who') as HTMLFormElement).addEventListener('submit', (e) => {
      e.preventDefault();
      void this.start();
    });
    (this.root.querySelector('form.secret') as HTMLFormElement).addEventListener('submit', (e) => {
      e.preventDefault();
      void this.attempt();
    });
  }

  private get status(): HTMLElement {
    return this.root.querySelector('.status') as HTMLElement;
  }

  private async start(): Promise<void> {
    const who = this.root.querySelector('form.who') as HTMLFormElement;
    this.username = (who.elements.namedItem('username') as HTMLInputElement).value.trim();
    if (!this.username) return;
    const challenge = await loginStart(this.username);
    const secretForm = this.root.querySelector('form.secret') as HTMLFormElement;
    const cue = this.root.querySelector('img.cue') as HTMLImageElement;
    if (challenge.condition === 'cueblot' && challenge.cue_image_url) {
      cue.src = challenge.cue_image_url;
      cue.hidden = false;
    } else {
      cue.hidden = true;
    }
    secretForm.hidden = false;
    this.status.textContent = '';
  }

  private async attempt(): Promise<void> {
    const form = this.root.querySelector('form.secret') as HTMLFormElement;
    const input = form.elements.namedItem('secret') as HTMLInputElement;
    const result = await loginAttempt(this.username, input.value);
    input.value = '';
    if (result.kind === 'locked_out') {
      this.lockForm(15 * 60);
      return;
    }
    if (result.outcome === 'success') {
      this.hooks.onAuthenticated(this.username);
    } else {
      this.status.textContent = 'Sign-in failed. Check your description and try again.';
    }
  }

  private lockForm(seconds: number): void {
    const form = this.root.querySelector('form.secret') as HTMLFormElement;
    for (const el of Array.from(form.elements)) {
      (el as HTMLInputElement | HTMLButtonElement).disabled = true;
    }
    let remaining = seconds;
    const render = () => {
      const m = Math.floor(remaining / 60);
      const s = remaining % 60;
      this.status.textContent =
        `Too many failed attempts. Try again in ${m}:${String(s).padStart(2, '0')}.`;
    };
    render();
    this.countdownTimer = setInterval(() => {
      remaining -= 1;
      if (remaining <= 0) {
        if (this.countdownTimer) clearInterval(this.countdownTimer);
        for (const el of Array.from(form.elements)) {
          (el as HTMLInputElement | HTMLButtonElement).disabled = false;
        }
        this.status.textContent = '';
      } else {
        render();
      }
    }, 1000);
  }
}
