// Screen routing: code entry -> designer -> login -> landing.

import { registerStart } from './api.js';
import { DesignerScreen } from './designer.js';
import { LoginScreen } from './login.js';

function show(el: HTMLElement): void {
  const app = document.getElementById('app')!;
  app.replaceChildren(el);
}

function showLogin(): void {
  const login = new LoginScreen({
    onAuthenticated: (username) => {
      const landing = document.createElement('section');
      landing.innerHTML = `<h2>Signed in</h2><p>Welcome back, ${username}.</p>`;
      show(landing);
    },
  });
  show(login.root);
}

function showCodeEntry(): void {
  const entry = document.createElement('section');
  entry.innerHTML = `
    <h2>Register</h2>
    <form class="code-entry">
      <label>Username <input type="text" name="username"></label>
      <label>Registration code <input type="text" name="code"></label>
      <button type="submit">Start</button>
    </form>
    <p><a href="#login">Already registered? Sign in</a></p>
    <p class="status" role="status"></p>`;
  entry.querySelector('form')!.addEventListener('submit', async (e) => {
    e.preventDefault();
    const form = e.target as HTMLFormElement;
    let code = (form.elements.namedItem('code') as HTMLInputElement).value.trim();
    const username = (form.elements.namedItem('username') as HTMLInputElement).value.trim();
    if (!code && username) {
      // Demo convenience: fetch a fresh code directly.
      try {
        code = await registerStart(username);
      } catch (err) {
        entry.querySelector('.status')!.textContent =
          (err as { message?: string }).message ?? 'Could not start registration.';
        return;
      }
    }
    if (!code) return;
    const designer = new DesignerScreen(code, { onRegistered: showLogin });
    show(designer.root);
  });
  show(entry);
}

window.addEventListener('DOMContentLoaded', () => {
  if (window.location.hash === '#login') {
    showLogin();
  } else {
    showCodeEntry();
  }
});
