// Debounce with cancel, for the job-search input.
export function debounce(fn, delayMs = 250) {
    let timer = null;
    const debounced = ((...args) => {
        if (timer !== null) {
            clearTimeout(timer);
        }
        timer = setTimeout(() => {
            timer = null;
            fn(...args);
        }, delayMs);
    });
    debounced.cancel = () => {
        if (timer !== null) {
            clearTimeout(timer);
            timer = null;
        }
    };
    return debounced;
}
