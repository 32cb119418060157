use std::fs::{self, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use zetasym::zeros::{load_registry, save_registry, ZeroRegistry};

use crate::error::{CliError, CliResult};

const LOCK_ATTEMPTS: u32 = 40;
const LOCK_WAIT: Duration = Duration::from_millis(50);

/// Exclusive writer lock held as `<registry>.lock` until dropped.
struct RegistryLock {
    path: PathBuf,
}

impl RegistryLock {
    fn acquire(registry: &Path) -> CliResult<Self> {
        let mut name = registry.as_os_str().to_owned();
        name.push(".lock");
        let path = PathBuf::from(name);
        for _ in 0..LOCK_ATTEMPTS {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(Self { path }),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => thread::sleep(LOCK_WAIT),
                Err(e) => {
                    return Err(CliError::Usage(format!("cannot create lock {}: {e}", path.display())));
                }
            }
        }
        Err(CliError::Usage(format!(
            "registry is locked by another writer ({} exists)",
            path.display()
        )))
    }
}

impl Drop for RegistryLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

/// Reads the registry at `path`, or `None` when the file does not exist.
pub fn read_if_present(path: &Path) -> CliResult<Option<ZeroRegistry>> {
    if !path.exists() {
        return Ok(None);
    }
    Ok(Some(load_registry(path)?))
}

/// Merges `found` into the registry file under the lock, writing through a
/// temporary file so readers never see a partial registry.
pub fn merge_into(path: &Path, found: &ZeroRegistry) -> CliResult<ZeroRegistry> {
    let _lock = RegistryLock::acquire(path)?;
    let mut reg = match read_if_present(path)? {
        Some(existing) => existing,
        None => ZeroRegistry::new(found.tolerance, found.scan_range),
    };
    reg.merge(found);
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    save_registry(&reg, &tmp)?;
    fs::rename(&tmp, path).map_err(|e| CliError::Usage(format!("cannot replace {}: {e}", path.display())))?;
    Ok(reg)
}
