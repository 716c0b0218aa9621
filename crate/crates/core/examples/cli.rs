//! Driving the command-line front end in-process.

use semiclassical::cli::run_command;

fn main() {
    for line in [
        "normal-order --expr (ad+a)^3",
        "spectrum --P (a+ad)^4 --n 1 --K 2",
        "spectrum-table --P a^2+ad^2 --levels 4 --K 2 --jobs 2",
        "discriminant --p x^3+l1*x+l2",
        "verify --only 6",
    ] {
        println!("$ semiclassical {line}");
        let args: Vec<String> = line.split(' ').map(String::from).collect();
        let code = run_command(&args, &mut std::io::stdout());
        println!("(exit {code})\n");
    }
}
