pub mod matrix_oracle;
